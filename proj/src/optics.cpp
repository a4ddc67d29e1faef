#include "pbsent/optics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pbsent::optics {

namespace {

using fock::FockBasisState;
using fock::ModeRegistry;

// Pascal table; C(n,k) is exact in double up to n = 56.
constexpr int kMaxPhotons = 56;

const std::array<std::array<double, kMaxPhotons + 1>, kMaxPhotons + 1>& binom_table() {
    static const auto table = [] {
        std::array<std::array<double, kMaxPhotons + 1>, kMaxPhotons + 1> t{};
        for (int n = 0; n <= kMaxPhotons; ++n) {
            t[n][0] = 1.0;
            for (int k = 1; k <= n; ++k)
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0.0);
        }
        return t;
    }();
    return table;
}

double binom(int n, int k) {
    if (n > kMaxPhotons)
        throw std::invalid_argument("photon number exceeds supported maximum of 56");
    return binom_table()[n][k];
}

Complex unit_phase_pow(const Complex& phase, int k) {
    Complex out = 1.0;
    for (int i = 0; i < k; ++i) out *= phase;
    return out;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Embeds a state into a registry extended with extra spatial labels (appended
// H then V per label), keeping all existing amplitudes.
QuantumState extend_registry(const QuantumState& s, const std::vector<std::string>& extra) {
    std::vector<ModeId> modes = s.registry()->modes();
    std::size_t added = 0;
    for (const auto& label : extra) {
        if (s.registry()->contains_spatial(label)) continue;
        modes.push_back({label, Pol::H});
        modes.push_back({label, Pol::V});
        added += 2;
    }
    if (added == 0) return s;
    auto registry = ModeRegistry::make_from_modes(std::move(modes));
    QuantumState::Amplitudes amps;
    for (const auto& [basis, amp] : s.amplitudes()) {
        FockBasisState b = basis;
        b.occ.resize(b.occ.size() + added, 0);
        amps[std::move(b)] = amp;
    }
    return QuantumState(std::move(registry), s.cutoff(), std::move(amps), s.truncated_mass());
}

}  // namespace

QuantumState apply_pbs(const QuantumState& s_in, const Pbs& e) {
    if (std::abs(std::abs(e.reflection_phase) - 1.0) > 1e-12)
        throw std::invalid_argument("pbs reflection phase must be a unit complex number");
    if (!s_in.registry()->contains_spatial(e.in1) || !s_in.registry()->contains_spatial(e.in2))
        throw std::invalid_argument("pbs: input port not registered");

    QuantumState s = extend_registry(s_in, {e.out1, e.out2});
    const auto& reg = *s.registry();
    const std::size_t in1H = reg.index_of({e.in1, Pol::H}), in1V = reg.index_of({e.in1, Pol::V});
    const std::size_t in2H = reg.index_of({e.in2, Pol::H}), in2V = reg.index_of({e.in2, Pol::V});
    const std::size_t out1H = reg.index_of({e.out1, Pol::H}), out1V = reg.index_of({e.out1, Pol::V});
    const std::size_t out2H = reg.index_of({e.out2, Pol::H}), out2V = reg.index_of({e.out2, Pol::V});

    QuantumState::Amplitudes amps;
    for (const auto& [basis, amp] : s.amplitudes()) {
        const int n1h = basis.occ[in1H], n1v = basis.occ[in1V];
        const int n2h = basis.occ[in2H], n2v = basis.occ[in2V];
        FockBasisState b = basis;
        b.occ[in1H] = b.occ[in1V] = b.occ[in2H] = b.occ[in2V] = 0;
        // H transmits, V crosses rails
        for (std::size_t out : {out1H, out1V, out2H, out2V})
            if (b.occ[out] != 0)
                throw std::invalid_argument("pbs: output port already occupied");
        b.occ[out1H] += n1h;
        b.occ[out2H] += n2h;
        b.occ[out2V] += n1v;
        b.occ[out1V] += n2v;
        amps[std::move(b)] += amp * unit_phase_pow(e.reflection_phase, n1v + n2v);
    }
    return QuantumState(s.registry(), s.cutoff(), std::move(amps), s.truncated_mass());
}

QuantumState apply_rotation(const QuantumState& s, const std::string& spatial, double theta) {
    if (!s.registry()->contains_spatial(spatial))
        throw std::invalid_argument("rotation: spatial label not registered: " + spatial);
    if (theta == 0.0) return s;

    const auto& reg = *s.registry();
    const std::size_t iH = reg.index_of({spatial, Pol::H});
    const std::size_t iV = reg.index_of({spatial, Pol::V});
    const double c = std::cos(theta), sn = std::sin(theta);

    // Lift aH -> c aH + sn aV, aV -> -sn aH + c aV to Fock space: expand the
    // binomials of (c aH + sn aV)^nH (-sn aH + c aV)^nV with the sqrt
    // normalization ratio sqrt(C(T,nH)/C(T,p)) for T = nH + nV conserved.
    QuantumState::Amplitudes amps;
    for (const auto& [basis, amp] : s.amplitudes()) {
        const int nH = basis.occ[iH], nV = basis.occ[iV];
        const int T = nH + nV;
        if (T == 0) {
            amps[basis] += amp;
            continue;
        }
        for (int i = 0; i <= nH; ++i) {
            for (int j = 0; j <= nV; ++j) {
                const int p = i + j;
                const int q = T - p;
                double coef = binom(nH, i) * binom(nV, j) * std::sqrt(binom(T, nH) / binom(T, p));
                coef *= std::pow(c, i) * std::pow(sn, nH - i);
                coef *= std::pow(-sn, j) * std::pow(c, nV - j);
                if (coef == 0.0) continue;
                FockBasisState b = basis;
                b.occ[iH] = p;
                b.occ[iV] = q;
                amps[std::move(b)] += amp * coef;
            }
        }
    }
    return QuantumState(s.registry(), s.cutoff(), std::move(amps), s.truncated_mass());
}

QuantumState apply_loss(const QuantumState& s, const ModeId& mode, double eta,
                        std::mt19937_64& rng) {
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("loss transmissivity must be in [0, 1]");
    if (!s.is_normalized(1e-9)) throw std::invalid_argument("loss requires a normalized state");
    const std::size_t idx = s.registry()->index_of(mode);

    int n_max = 0;
    for (const auto& [basis, amp] : s.amplitudes()) n_max = std::max(n_max, basis.occ[idx]);

    // Outcome probabilities for losing l photons, then one Kraus branch.
    std::vector<double> p_lost(n_max + 1, 0.0);
    for (const auto& [basis, amp] : s.amplitudes()) {
        const int n = basis.occ[idx];
        const double w = std::norm(amp);
        for (int l = 0; l <= n; ++l)
            p_lost[l] += w * binom(n, l) * std::pow(eta, n - l) * std::pow(1.0 - eta, l);
    }

    const double u = uniform01(rng);
    int lost = n_max;
    double cum = 0.0;
    for (int l = 0; l <= n_max; ++l) {
        cum += p_lost[l];
        if (u < cum) {
            lost = l;
            break;
        }
    }

    QuantumState::Amplitudes amps;
    for (const auto& [basis, amp] : s.amplitudes()) {
        const int n = basis.occ[idx];
        if (n < lost) continue;
        const double k = std::sqrt(binom(n, lost) * std::pow(eta, n - lost) *
                                   std::pow(1.0 - eta, lost));
        FockBasisState b = basis;
        b.occ[idx] = n - lost;
        amps[std::move(b)] += amp * k;
    }
    QuantumState branch(s.registry(), s.cutoff(), std::move(amps), s.truncated_mass());
    return normalize(branch);
}

QuantumState apply_element(const QuantumState& s, const OpticalElement& e, std::mt19937_64* rng) {
    if (const auto* pbs = std::get_if<Pbs>(&e)) return apply_pbs(s, *pbs);
    if (const auto* rot = std::get_if<Rotation>(&e)) return apply_rotation(s, rot->spatial, rot->theta);
    const auto& loss = std::get<Loss>(e);
    if (rng == nullptr) throw std::invalid_argument("loss element requires an RNG");
    return apply_loss(s, loss.mode, loss.eta, *rng);
}

QuantumState apply_circuit(const QuantumState& s, const Circuit& c, std::mt19937_64* rng) {
    QuantumState out = s;
    for (const auto& e : c.elements) out = apply_element(out, e, rng);
    return out;
}

QuantumState make_weak_pair_source(double P, PairSign sign, const std::string& spatial_a,
                                   const std::string& spatial_b) {
    if (P < 0.0 || P >= 1.0) throw std::invalid_argument("weak-pair amplitude P must be in [0, 1)");
    auto registry = ModeRegistry::make({spatial_a, spatial_b});
    QuantumState::Amplitudes amps;
    amps[FockBasisState{{0, 0, 0, 0}}] = std::sqrt(1.0 - P * P);
    if (P > 0.0) {
        if (sign == PairSign::plus)
            amps[FockBasisState{{1, 0, 0, 1}}] = P;   // |H>_a |V>_b
        else
            amps[FockBasisState{{0, 1, 1, 0}}] = -P;  // -|V>_a |H>_b
    }
    return QuantumState(std::move(registry), 2, std::move(amps));
}

QuantumState make_squeezed_source(double r, PolOrder order, const std::string& spatial_a,
                                  const std::string& spatial_b, int pair_cutoff) {
    if (pair_cutoff < 0) throw std::invalid_argument("pair cutoff must be >= 0");
    auto registry = ModeRegistry::make({spatial_a, spatial_b});
    const double t = std::tanh(r);
    const double x = t * t;

    QuantumState::Amplitudes amps;
    double z = 0.0, tk = 1.0;
    for (int k = 0; k <= pair_cutoff; ++k) {
        FockBasisState b{{0, 0, 0, 0}};
        if (order == PolOrder::hv) {
            b.occ[0] = k;  // a.H
            b.occ[3] = k;  // b.V
        } else {
            b.occ[1] = k;  // a.V
            b.occ[2] = k;  // b.H
        }
        amps[std::move(b)] = tk;
        z += tk * tk;
        tk *= t;
    }
    for (auto& [basis, amp] : amps) amp /= std::sqrt(z);
    const double tail = std::pow(x, pair_cutoff + 1);
    return QuantumState(std::move(registry), 2 * pair_cutoff, std::move(amps), tail);
}

QuantumState build_fig2_circuit(const SourceParams& params, int pair_cutoff,
                                Complex reflection_phase) {
    if (pair_cutoff < 0) throw std::invalid_argument("pair cutoff must be >= 0");

    QuantumState s1 = params.kind == SourceKind::weak_pair
                          ? make_weak_pair_source(params.P, PairSign::plus, kSource1A, kSource1B)
                          : make_squeezed_source(params.r, PolOrder::hv, kSource1A, kSource1B,
                                                 pair_cutoff);
    QuantumState s2 = params.kind == SourceKind::weak_pair
                          ? make_weak_pair_source(params.P, PairSign::minus, kSource2A, kSource2B)
                          : make_squeezed_source(-params.r, PolOrder::vh, kSource2A, kSource2B,
                                                 pair_cutoff);

    const int combined_cutoff =
        params.kind == SourceKind::weak_pair ? 4 : 2 * pair_cutoff;
    QuantumState joint = tensor(s1, s2, combined_cutoff);

    joint = apply_pbs(joint, Pbs{kSource1A, kSource2A, kOutA, kDump1, reflection_phase});
    joint = apply_pbs(joint, Pbs{kSource1B, kSource2B, kDump2, kOutB, reflection_phase});
    return normalize(restrict_to(joint, {kOutA, kOutB}));
}

int auto_pair_cutoff(double r, double budget) {
    if (budget <= 0.0) throw std::invalid_argument("truncation budget must be positive");
    const double x = std::tanh(r) * std::tanh(r);
    for (int n = 0; n <= 512; ++n) {
        const double tail = std::pow(x, n + 1) * ((n + 2) - (n + 1) * x);
        if (tail < budget) return n;
    }
    throw std::invalid_argument("no pair cutoff meets the truncation budget for this r");
}

}  // namespace pbsent::optics
