#pragma once

#include <random>
#include <variant>

#include "pbsent/fock.hpp"

namespace pbsent::optics {

using fock::Complex;
using fock::ModeId;
using fock::Pol;
using fock::QuantumState;
using fock::RegistryPtr;

enum class SourceKind { weak_pair, squeezed };
enum class PairSign { plus, minus };
enum class PolOrder { hv, vh };

/// Parameters of one emission source: P for weak pairs, r for two-mode
/// squeezed vacuum. Exactly one of the two is meaningful per kind.
struct SourceParams {
    SourceKind kind = SourceKind::squeezed;
    double P = 0.0;
    double r = 0.0;
};

/// Polarizing beam splitter on two spatial rails: H passes straight through
/// (in1->out1, in2->out2), V crosses (in1->out2, in2->out1) and picks up
/// reflection_phase per reflected photon. Out ports may equal in ports for an
/// in-place element.
struct Pbs {
    std::string in1, in2, out1, out2;
    Complex reflection_phase = 1.0;
};

/// Real SO(2) mixing of the H/V operator pair at one spatial label:
/// H -> cos(theta) H + sin(theta) V, V -> -sin(theta) H + cos(theta) V.
struct Rotation {
    std::string spatial;
    double theta = 0.0;
};

/// Photon loss on one mode, trajectory-sampled (each photon survives with
/// probability eta). Only valid in sampling paths.
struct Loss {
    ModeId mode;
    double eta = 1.0;
};

using OpticalElement = std::variant<Pbs, Rotation, Loss>;

struct Circuit {
    std::vector<OpticalElement> elements;
};

QuantumState apply_pbs(const QuantumState& s, const Pbs& e);
QuantumState apply_rotation(const QuantumState& s, const std::string& spatial, double theta);
QuantumState apply_loss(const QuantumState& s, const ModeId& mode, double eta,
                        std::mt19937_64& rng);
QuantumState apply_element(const QuantumState& s, const OpticalElement& e, std::mt19937_64* rng);
QuantumState apply_circuit(const QuantumState& s, const Circuit& c, std::mt19937_64* rng = nullptr);

/// sqrt(1-P^2)|00> + P|H>_a|V>_b (plus) or sqrt(1-P^2)|00> - P|V>_a|H>_b
/// (minus). Requires 0 <= P < 1; the state is exactly normalized.
QuantumState make_weak_pair_source(double P, PairSign sign, const std::string& spatial_a,
                                   const std::string& spatial_b);

/// Two-mode squeezed vacuum, sum_k tanh^k(r) |k>|k>, truncated at k <=
/// pair_cutoff and normalized. Order hv puts the k H photons in mode a and
/// the k V photons in mode b; vh swaps the polarizations. The discarded tail
/// of the ideal state, tanh^{2(pair_cutoff+1)} r, is reported via
/// truncated_mass().
QuantumState make_squeezed_source(double r, PolOrder order, const std::string& spatial_a,
                                  const std::string& spatial_b, int pair_cutoff);

// Spatial labels of the two-source / two-PBS network.
inline const std::string kSource1A = "source-1-a";
inline const std::string kSource1B = "source-1-b";
inline const std::string kSource2A = "source-2-a";
inline const std::string kSource2B = "source-2-b";
inline const std::string kOutA = "out-A";
inline const std::string kOutB = "out-B";
inline const std::string kDump1 = "dump-1";
inline const std::string kDump2 = "dump-2";

/// Builds the two-source / two-PBS erasure network: source 1 with +parameter
/// and source 2 with -parameter, the `a` modes combined on PBS 1 into out-A,
/// the `b` modes combined on PBS 2 into out-B. Returns the normalized output
/// state over the out-A / out-B modes; truncated_mass() carries the
/// accumulated discarded probability. pair_cutoff bounds the photon number
/// per output arm.
QuantumState build_fig2_circuit(const SourceParams& params, int pair_cutoff,
                                Complex reflection_phase = 1.0);

/// Smallest per-arm pair cutoff N whose ideal squeezed-output tail mass
/// tanh^{2(N+1)}r * ((N+2) - (N+1) tanh^2 r) is below budget.
int auto_pair_cutoff(double r, double budget);

}  // namespace pbsent::optics
