#pragma once

#include <complex>
#include <compare>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pbsent::fock {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;
/// Tolerance for norm checks (normalized states, unitary elements).
inline constexpr double kNormTolerance = 1e-12;

enum class Pol { H, V };

const char* to_string(Pol p);

/// One optical mode: a spatial path carrying one linear polarization.
struct ModeId {
    std::string spatial;
    Pol pol;

    auto operator<=>(const ModeId&) const = default;
};

std::string to_string(const ModeId& m);

/// Fixed, ordered set of modes. Every state refers to one registry and all
/// occupation vectors are indexed in registry order.
class ModeRegistry {
  public:
    /// Registers H and V modes for each spatial label, in the given order.
    static std::shared_ptr<const ModeRegistry> make(const std::vector<std::string>& spatials);
    static std::shared_ptr<const ModeRegistry> make_from_modes(std::vector<ModeId> modes);

    std::size_t size() const { return modes_.size(); }
    const ModeId& mode(std::size_t i) const { return modes_[i]; }
    const std::vector<ModeId>& modes() const { return modes_; }

    bool contains(const ModeId& m) const;
    /// Index of a mode; throws std::invalid_argument if not registered.
    std::size_t index_of(const ModeId& m) const;
    bool contains_spatial(const std::string& spatial) const;
    /// All modes (H then V) at one spatial label.
    std::vector<ModeId> modes_of(const std::string& spatial) const;
    std::vector<std::string> spatials() const;

    bool operator==(const ModeRegistry& other) const { return modes_ == other.modes_; }

  private:
    explicit ModeRegistry(std::vector<ModeId> modes);
    std::vector<ModeId> modes_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

/// Photon occupation numbers, one per registered mode, in registry order.
struct FockBasisState {
    std::vector<int> occ;

    auto operator<=>(const FockBasisState&) const = default;

    int total() const;
    /// Total photons in the given registry-index subset.
    int total_in(std::span<const std::size_t> indices) const;
};

/// Sparse multimode Fock state: map from basis state to complex amplitude.
///
/// Immutable after construction; operations return new states. The cutoff
/// bounds the total photon number of every stored basis state. Probability
/// mass discarded by truncating construction, tensoring or pruning is
/// accumulated in truncated_mass() as a diagnostic.
class QuantumState {
  public:
    using Amplitudes = std::map<FockBasisState, Complex>;

    QuantumState(RegistryPtr registry, int cutoff, Amplitudes amplitudes,
                 double truncated_mass = 0.0);

    static QuantumState vacuum(RegistryPtr registry, int cutoff);

    const RegistryPtr& registry() const { return registry_; }
    int cutoff() const { return cutoff_; }
    const Amplitudes& amplitudes() const { return amplitudes_; }
    std::size_t term_count() const { return amplitudes_.size(); }
    bool is_zero() const { return amplitudes_.empty(); }
    double truncated_mass() const { return truncated_mass_; }

    /// Sum of squared amplitude magnitudes, exactly as stored.
    double norm2() const;
    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    Complex amplitude(const FockBasisState& b) const;

  private:
    RegistryPtr registry_;
    int cutoff_;
    Amplitudes amplitudes_;
    double truncated_mass_;
};

bool same_registry(const QuantumState& a, const QuantumState& b);

/// Tensor product of states over disjoint mode sets. The result lives on the
/// concatenated registry (s1 modes first). Product terms above the combined
/// cutoff are dropped and their squared mass added to truncated_mass.
/// combined_cutoff < 0 means s1.cutoff() + s2.cutoff() (no truncation).
QuantumState tensor(const QuantumState& s1, const QuantumState& s2, int combined_cutoff = -1);

/// Scales so squared amplitudes sum to 1. Throws on the zero state. The
/// scale factor is a positive real, so the direction (and phase) is kept.
QuantumState normalize(const QuantumState& s);

/// <s1|s2> over a common registry.
Complex overlap(const QuantumState& s1, const QuantumState& s2);

/// P(n) = sum of |amplitude|^2 over basis states with n total photons in the
/// given modes. Requires a normalized state and a nonempty mode subset.
std::map<int, double> total_photon_number_distribution(const QuantumState& s,
                                                       std::span<const ModeId> modes);

/// Projects onto the sub-registry of the given spatial labels (in the given
/// order). Every dropped mode must be unoccupied across the support.
QuantumState restrict_to(const QuantumState& s, const std::vector<std::string>& spatials);

}  // namespace pbsent::fock
