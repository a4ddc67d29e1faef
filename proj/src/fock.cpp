#include "pbsent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pbsent::fock {

const char* to_string(Pol p) { return p == Pol::H ? "H" : "V"; }

std::string to_string(const ModeId& m) { return m.spatial + "." + to_string(m.pol); }

ModeRegistry::ModeRegistry(std::vector<ModeId> modes) : modes_(std::move(modes)) {
    std::set<ModeId> seen;
    for (const auto& m : modes_) {
        if (!seen.insert(m).second)
            throw std::invalid_argument("duplicate mode in registry: " + to_string(m));
    }
}

std::shared_ptr<const ModeRegistry> ModeRegistry::make(const std::vector<std::string>& spatials) {
    std::vector<ModeId> modes;
    modes.reserve(spatials.size() * 2);
    for (const auto& s : spatials) {
        modes.push_back({s, Pol::H});
        modes.push_back({s, Pol::V});
    }
    return std::shared_ptr<const ModeRegistry>(new ModeRegistry(std::move(modes)));
}

std::shared_ptr<const ModeRegistry> ModeRegistry::make_from_modes(std::vector<ModeId> modes) {
    return std::shared_ptr<const ModeRegistry>(new ModeRegistry(std::move(modes)));
}

bool ModeRegistry::contains(const ModeId& m) const {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

std::size_t ModeRegistry::index_of(const ModeId& m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end())
        throw std::invalid_argument("mode not registered: " + to_string(m));
    return static_cast<std::size_t>(it - modes_.begin());
}

bool ModeRegistry::contains_spatial(const std::string& spatial) const {
    return std::any_of(modes_.begin(), modes_.end(),
                       [&](const ModeId& m) { return m.spatial == spatial; });
}

std::vector<ModeId> ModeRegistry::modes_of(const std::string& spatial) const {
    std::vector<ModeId> out;
    for (const auto& m : modes_)
        if (m.spatial == spatial) out.push_back(m);
    if (out.empty())
        throw std::invalid_argument("spatial label not registered: " + spatial);
    return out;
}

std::vector<std::string> ModeRegistry::spatials() const {
    std::vector<std::string> out;
    for (const auto& m : modes_)
        if (std::find(out.begin(), out.end(), m.spatial) == out.end()) out.push_back(m.spatial);
    return out;
}

int FockBasisState::total() const { return std::accumulate(occ.begin(), occ.end(), 0); }

int FockBasisState::total_in(std::span<const std::size_t> indices) const {
    int n = 0;
    for (auto i : indices) n += occ[i];
    return n;
}

QuantumState::QuantumState(RegistryPtr registry, int cutoff, Amplitudes amplitudes,
                           double truncated_mass)
    : registry_(std::move(registry)), cutoff_(cutoff), truncated_mass_(truncated_mass) {
    if (!registry_) throw std::invalid_argument("null mode registry");
    if (cutoff_ < 0) throw std::invalid_argument("negative cutoff");
    for (auto it = amplitudes.begin(); it != amplitudes.end();) {
        const auto& [basis, amp] = *it;
        if (basis.occ.size() != registry_->size())
            throw std::invalid_argument("basis state does not match registry size");
        for (int n : basis.occ)
            if (n < 0) throw std::invalid_argument("negative occupation number");
        if (basis.total() > cutoff_)
            throw std::invalid_argument("basis state exceeds photon-number cutoff");
        if (std::abs(amp) < kPruneThreshold) {
            truncated_mass_ += std::norm(amp);
            it = amplitudes.erase(it);
        } else {
            ++it;
        }
    }
    amplitudes_ = std::move(amplitudes);
}

QuantumState QuantumState::vacuum(RegistryPtr registry, int cutoff) {
    Amplitudes amps;
    amps[FockBasisState{std::vector<int>(registry->size(), 0)}] = 1.0;
    return QuantumState(std::move(registry), cutoff, std::move(amps));
}

double QuantumState::norm2() const {
    double s = 0.0;
    for (const auto& [basis, amp] : amplitudes_) s += std::norm(amp);
    return s;
}

double QuantumState::norm() const { return std::sqrt(norm2()); }

bool QuantumState::is_normalized(double tol) const { return std::abs(norm2() - 1.0) <= tol; }

Complex QuantumState::amplitude(const FockBasisState& b) const {
    auto it = amplitudes_.find(b);
    return it == amplitudes_.end() ? Complex{0.0, 0.0} : it->second;
}

bool same_registry(const QuantumState& a, const QuantumState& b) {
    return a.registry() == b.registry() || *a.registry() == *b.registry();
}

QuantumState tensor(const QuantumState& s1, const QuantumState& s2, int combined_cutoff) {
    for (const auto& m : s2.registry()->modes())
        if (s1.registry()->contains(m))
            throw std::invalid_argument("tensor: overlapping mode sets at " + to_string(m));

    std::vector<ModeId> modes = s1.registry()->modes();
    const auto& modes2 = s2.registry()->modes();
    modes.insert(modes.end(), modes2.begin(), modes2.end());
    auto registry = ModeRegistry::make_from_modes(std::move(modes));

    int cutoff = combined_cutoff < 0 ? s1.cutoff() + s2.cutoff() : combined_cutoff;
    double dropped = 0.0;
    QuantumState::Amplitudes amps;
    for (const auto& [b1, a1] : s1.amplitudes()) {
        for (const auto& [b2, a2] : s2.amplitudes()) {
            if (b1.total() + b2.total() > cutoff) {
                dropped += std::norm(a1 * a2);
                continue;
            }
            FockBasisState b;
            b.occ.reserve(b1.occ.size() + b2.occ.size());
            b.occ.insert(b.occ.end(), b1.occ.begin(), b1.occ.end());
            b.occ.insert(b.occ.end(), b2.occ.begin(), b2.occ.end());
            amps[std::move(b)] = a1 * a2;
        }
    }
    return QuantumState(std::move(registry), cutoff, std::move(amps),
                        s1.truncated_mass() + s2.truncated_mass() + dropped);
}

QuantumState normalize(const QuantumState& s) {
    const double n = s.norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize the zero state");
    QuantumState::Amplitudes amps = s.amplitudes();
    for (auto& [basis, amp] : amps) amp /= n;
    return QuantumState(s.registry(), s.cutoff(), std::move(amps), s.truncated_mass());
}

Complex overlap(const QuantumState& s1, const QuantumState& s2) {
    if (!same_registry(s1, s2)) throw std::invalid_argument("overlap: registry mismatch");
    // iterate the smaller map
    const QuantumState& a = s1.term_count() <= s2.term_count() ? s1 : s2;
    const QuantumState& b = &a == &s1 ? s2 : s1;
    Complex sum = 0.0;
    for (const auto& [basis, amp] : a.amplitudes()) {
        Complex other = b.amplitude(basis);
        if (other == Complex{0.0, 0.0}) continue;
        sum += (&a == &s1) ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return sum;
}

std::map<int, double> total_photon_number_distribution(const QuantumState& s,
                                                       std::span<const ModeId> modes) {
    if (modes.empty())
        throw std::invalid_argument("total_photon_number_distribution: empty mode subset");
    std::vector<std::size_t> indices;
    indices.reserve(modes.size());
    for (const auto& m : modes) indices.push_back(s.registry()->index_of(m));

    std::map<int, double> dist;
    for (const auto& [basis, amp] : s.amplitudes())
        dist[basis.total_in(indices)] += std::norm(amp);
    return dist;
}

QuantumState restrict_to(const QuantumState& s, const std::vector<std::string>& spatials) {
    std::vector<ModeId> kept;
    std::vector<std::size_t> kept_idx;
    for (const auto& label : spatials) {
        for (const auto& m : s.registry()->modes_of(label)) {
            kept.push_back(m);
            kept_idx.push_back(s.registry()->index_of(m));
        }
    }
    std::vector<bool> keep(s.registry()->size(), false);
    for (auto i : kept_idx) keep[i] = true;

    QuantumState::Amplitudes amps;
    for (const auto& [basis, amp] : s.amplitudes()) {
        for (std::size_t i = 0; i < basis.occ.size(); ++i)
            if (!keep[i] && basis.occ[i] != 0)
                throw std::invalid_argument("restrict_to: dropped mode is occupied: " +
                                            to_string(s.registry()->mode(i)));
        FockBasisState b;
        b.occ.reserve(kept_idx.size());
        for (auto i : kept_idx) b.occ.push_back(basis.occ[i]);
        amps[std::move(b)] = amp;
    }
    return QuantumState(ModeRegistry::make_from_modes(std::move(kept)), s.cutoff(),
                        std::move(amps), s.truncated_mass());
}

}  // namespace pbsent::fock
