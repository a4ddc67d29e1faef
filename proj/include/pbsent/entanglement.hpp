#pragma once

#include <optional>

#include "pbsent/fock.hpp"
#include "pbsent/parallel.hpp"

namespace pbsent::ent {

using fock::Complex;
using fock::ModeId;
using fock::QuantumState;

enum class TargetKind { singlet, phi, e_n };

/// A closed-form target state over the out-A / out-B modes.
struct TargetState {
    TargetKind kind;
    QuantumState realized;
};

/// (|H>_A|V>_B - |V>_A|H>_B) / sqrt(2).
TargetState make_singlet_target();

/// Normalized truncation of sum_n tanh^n r sum_m (-1)^m
/// |n-m>_AH |m>_AV |m>_BH |n-m>_BV, n <= pair_cutoff. The ideal tail mass is
/// reported via truncated_mass().
TargetState make_phi_target(double r, int pair_cutoff);

/// Maximally entangled n-pair state sum_m (-1)^m / sqrt(n+1)
/// |n-m>_AH |m>_AV |m>_BH |n-m>_BV. Requires n <= pair_cutoff.
TargetState make_en_target(int n, int pair_cutoff = -1);

struct PostselectResult {
    std::optional<QuantumState> state;  // empty when the outcome has zero probability
    double probability = 0.0;
};

/// Projects a normalized state onto total photon number n in the given
/// modes, renormalized, together with the Born probability of that outcome.
PostselectResult postselect_total(const QuantumState& s, std::span<const ModeId> arm, int n);

/// Plain squared overlap |<t|s>|^2 (insensitive to a global phase).
double fidelity(const QuantumState& s, const TargetState& t);

/// max over per-mode phase assignments of |<t| e^{i sum_j theta_j n_j} |s>|^2.
/// The optimum is found exactly by integer elimination of the phase
/// constraints (no numerical search); always >= the plain fidelity.
double fidelity_up_to_local_phases(const QuantumState& s, const TargetState& t);

/// Polarization-analyzer orientations for the four CHSH correlations.
struct ChshSettings {
    double alice = 0.0;
    double alice_prime = 0.0;
    double bob = 0.0;
    double bob_prime = 0.0;
};

/// E(thetaA, thetaB) = P(same analyzer outcome) - P(different) for a state
/// with exactly one photon per arm; each arm is rotated by -theta and
/// detected in H/V, with H the +1 outcome.
double correlation(const QuantumState& s, double theta_a, double theta_b);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_value(const QuantumState& s, const ChshSettings& settings);

struct ChshGridScan {
    std::vector<double> angles;       // grid shared by all four settings
    std::vector<double> correlations; // row-major E(angles[i], angles[j])
    double max_abs_s = 0.0;
    ChshSettings best;
};

/// Evaluates E on the angle grid and maximizes |S| over all 4-tuples of grid
/// angles. Deterministic for both execution policies.
ChshGridScan scan_chsh_grid(const QuantumState& s, const std::vector<double>& angles,
                            Exec exec = Exec::serial);

/// 1 - fidelity of e-n against itself after a joint pi/4 rotation of both
/// arms.
double check_pi4_invariance(int n);

/// Same deviation at an arbitrary joint rotation angle (diagnostic).
double joint_rotation_deviation(int n, double theta);

}  // namespace pbsent::ent
