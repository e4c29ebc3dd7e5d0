#include "qprop/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qprop/rng.hpp"

namespace qprop {

std::array<cplx, 4> single_qubit_matrix(GateKind kind, const std::vector<double>& params) {
    const double isq = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    switch (kind) {
        case GateKind::H:   return {isq, isq, isq, -isq};
        case GateKind::X:   return {0, 1, 1, 0};
        case GateKind::Y:   return {0, -i, i, 0};
        case GateKind::Z:   return {1, 0, 0, -1};
        case GateKind::S:   return {1, 0, 0, i};
        case GateKind::Sdg: return {1, 0, 0, -i};
        case GateKind::T:   return {1, 0, 0, std::exp(i * (M_PI / 4.0))};
        case GateKind::Tdg: return {1, 0, 0, std::exp(-i * (M_PI / 4.0))};
        case GateKind::RX: {
            const double h = params[0] / 2.0;
            return {std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h)};
        }
        case GateKind::RY: {
            const double h = params[0] / 2.0;
            return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
        }
        case GateKind::RZ: {
            const double h = params[0] / 2.0;
            return {std::exp(-i * h), 0, 0, std::exp(i * h)};
        }
        case GateKind::P:
            return {1, 0, 0, std::exp(i * params[0])};
        case GateKind::U: {
            const double th = params[0], ph = params[1], la = params[2];
            return {std::cos(th / 2.0), -std::exp(i * la) * std::sin(th / 2.0),
                    std::exp(i * ph) * std::sin(th / 2.0),
                    std::exp(i * (ph + la)) * std::cos(th / 2.0)};
        }
        default:
            throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
    }
}

namespace {

void apply_single_qubit(std::vector<cplx>& amps, int qubit, const std::array<cplx, 4>& m) {
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & bit)
            continue;
        const cplx a0 = amps[base];
        const cplx a1 = amps[base | bit];
        amps[base] = m[0] * a0 + m[1] * a1;
        amps[base | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_gate(std::vector<cplx>& amps, const Gate& g) {
    switch (g.kind) {
        case GateKind::CX: {
            const std::size_t cbit = std::size_t{1} << g.qubits[0];
            const std::size_t tbit = std::size_t{1} << g.qubits[1];
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if ((idx & cbit) && !(idx & tbit))
                    std::swap(amps[idx], amps[idx | tbit]);
            return;
        }
        case GateKind::CZ: {
            const std::size_t mask =
                (std::size_t{1} << g.qubits[0]) | (std::size_t{1} << g.qubits[1]);
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if ((idx & mask) == mask)
                    amps[idx] = -amps[idx];
            return;
        }
        case GateKind::CP: {
            const std::size_t mask =
                (std::size_t{1} << g.qubits[0]) | (std::size_t{1} << g.qubits[1]);
            const cplx phase = std::exp(cplx{0.0, 1.0} * g.params[0]);
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if ((idx & mask) == mask)
                    amps[idx] *= phase;
            return;
        }
        case GateKind::SWAP: {
            const std::size_t abit = std::size_t{1} << g.qubits[0];
            const std::size_t bbit = std::size_t{1} << g.qubits[1];
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if ((idx & abit) && !(idx & bbit))
                    std::swap(amps[idx], amps[(idx & ~abit) | bbit]);
            return;
        }
        case GateKind::CCX: {
            const std::size_t c1 = std::size_t{1} << g.qubits[0];
            const std::size_t c2 = std::size_t{1} << g.qubits[1];
            const std::size_t tbit = std::size_t{1} << g.qubits[2];
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if ((idx & c1) && (idx & c2) && !(idx & tbit))
                    std::swap(amps[idx], amps[idx | tbit]);
            return;
        }
        default:
            apply_single_qubit(amps, g.qubits[0], single_qubit_matrix(g.kind, g.params));
            return;
    }
}

void apply_initialize(std::vector<cplx>& amps, const InitializeOp& init) {
    // Targets are untouched so far, hence in |0..0> and unentangled: scatter
    // the prepared amplitudes over the target bit positions.
    std::vector<std::size_t> target_bits;
    target_bits.reserve(init.targets.size());
    for (int q : init.targets)
        target_bits.push_back(std::size_t{1} << q);
    std::size_t target_mask = 0;
    for (std::size_t b : target_bits)
        target_mask |= b;

    std::vector<cplx> out(amps.size());
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & target_mask)
            continue;
        const cplx rest = amps[idx];
        if (rest == cplx{})
            continue;
        for (std::size_t pattern = 0; pattern < init.amplitudes.size(); ++pattern) {
            std::size_t scattered = idx;
            for (std::size_t k = 0; k < target_bits.size(); ++k)
                if (pattern & (std::size_t{1} << k))
                    scattered |= target_bits[k];
            out[scattered] = rest * init.amplitudes[pattern];
        }
    }
    amps = std::move(out);
}

std::vector<cplx> evolve(const Circuit& c, std::vector<int>* measured_out) {
    std::vector<cplx> amps(std::size_t{1} << c.num_qubits());
    amps[0] = 1.0;
    for (const auto& op : c.ops()) {
        if (const Gate* g = std::get_if<Gate>(&op)) {
            apply_gate(amps, *g);
        } else if (const InitializeOp* init = std::get_if<InitializeOp>(&op)) {
            apply_initialize(amps, *init);
        } else {
            const MeasureOp& m = std::get<MeasureOp>(op);
            if (!measured_out)
                throw std::invalid_argument(
                    "statevector: circuit contains measurements; use sample_counts");
            if (m.basis != Basis::Z)
                throw std::invalid_argument(
                    "sample_counts: non-Z measurement basis; basis changes must be "
                    "inlined as gates first");
            measured_out->push_back(m.qubit);
        }
    }
    return amps;
}

} // namespace

StateVector simulate_statevector(const Circuit& c) {
    return StateVector(evolve(c, nullptr));
}

std::vector<double> marginal_distribution(const StateVector& sv, const std::vector<int>& qubits) {
    if (qubits.empty())
        throw std::invalid_argument("marginal_distribution: empty qubit list");
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= sv.num_qubits())
            throw std::invalid_argument("marginal_distribution: qubit index out of range");
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j])
                throw std::invalid_argument("marginal_distribution: duplicate qubit index");
    }
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto& amps = sv.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double w = std::norm(amps[idx]);
        if (w == 0.0)
            continue;
        std::size_t j = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k)
            if (idx & (std::size_t{1} << qubits[k]))
                j |= std::size_t{1} << k;
        probs[j] += w;
    }
    return probs;
}

Counts sample_counts(const Circuit& c, int shots, std::uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("sample_counts: shots must be positive");
    std::vector<int> measured;
    const std::vector<cplx> amps = evolve(c, &measured);
    if (measured.empty())
        throw std::invalid_argument("sample_counts: no measurement present");
    std::sort(measured.begin(), measured.end());

    const std::vector<double> probs =
        marginal_distribution(StateVector(amps), measured);

    // Cumulative distribution for per-shot inversion sampling.
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0;

    Rng rng(seed);
    std::vector<std::uint64_t> tally(probs.size(), 0);
    for (int s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf.begin());
        if (k >= probs.size())
            k = probs.size() - 1;
        // Zero-probability outcomes are never reported even if rounding in
        // the cdf lands on them.
        while (probs[k] == 0.0 && k > 0)
            --k;
        ++tally[k];
    }

    Counts out;
    out.total_shots = static_cast<std::uint64_t>(shots);
    out.measured_qubits = measured;
    for (std::size_t k = 0; k < tally.size(); ++k) {
        if (tally[k] == 0)
            continue;
        std::string key(measured.size(), '0');
        for (std::size_t t = 0; t < measured.size(); ++t)
            if (k & (std::size_t{1} << t))
                key[t] = '1';
        out.counts.emplace(std::move(key), tally[k]);
    }
    return out;
}

} // namespace qprop
