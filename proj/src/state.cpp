#include "ghzlab/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzlab {

namespace {

const std::complex<double> kIPower[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_hermitian(const PauliString& p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation requires a Hermitian string (phase +1 or -1), got phase " +
                                    p.phase().str());
    }
}

} // namespace

StateVector make_ghz(int n, int dense_cap) {
    if (n < 1) {
        throw std::invalid_argument("qubit count must be positive");
    }
    if (n > dense_cap) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the dense cap " +
                                    std::to_string(dense_cap) +
                                    "; use the closed-form engine for larger systems");
    }
    StateVector state;
    state.n = n;
    state.amplitudes.assign(std::size_t{1} << n, {0.0, 0.0});
    const double amp = 1.0 / std::sqrt(2.0);
    state.amplitudes.front() = amp;
    state.amplitudes.back() = amp;
    return state;
}

double norm_squared(const StateVector& state) {
    double total = 0.0;
    for (const auto& a : state.amplitudes) {
        total += std::norm(a);
    }
    return total;
}

double expectation(const StateVector& state, const PauliString& p) {
    require_hermitian(p);
    if (p.qubit_count() != state.n) {
        throw std::invalid_argument("pauli string qubit count " + std::to_string(p.qubit_count()) +
                                    " does not match state qubit count " + std::to_string(state.n));
    }
    const std::uint64_t flip = p.flip_mask();
    const std::uint64_t yz = p.y_mask() | p.z_mask();
    const int base_exp = p.phase().i_exponent() + p.count(PauliLetter::Y);

    // <psi|p|psi> = sum_b conj(psi[b ^ flip]) * i^exp(b) * psi[b].
    std::complex<double> total{0.0, 0.0};
    const std::uint64_t dim = std::uint64_t{1} << state.n;
    for (std::uint64_t b = 0; b < dim; ++b) {
        const std::complex<double>& amp = state.amplitudes[b];
        if (amp == std::complex<double>{0.0, 0.0}) {
            continue;
        }
        const int exp = (base_exp + 2 * std::popcount(b & yz)) & 3;
        total += std::conj(state.amplitudes[b ^ flip]) * kIPower[exp] * amp;
    }
    return total.real();
}

double ghz_expectation_closed_form(int n, const PauliString& p) {
    require_hermitian(p);
    if (n < 1) {
        throw std::invalid_argument("qubit count must be positive");
    }
    if (p.qubit_count() != n) {
        throw std::invalid_argument("pauli string qubit count " + std::to_string(p.qubit_count()) +
                                    " does not match n = " + std::to_string(n));
    }
    const int sign = p.phase().real_sign();
    const int flips = p.count(PauliLetter::X) + p.count(PauliLetter::Y);
    if (flips == 0) {
        return p.count(PauliLetter::Z) % 2 == 0 ? sign * 1.0 : 0.0;
    }
    if (flips < n) {
        return 0.0;
    }
    const int y = p.count(PauliLetter::Y);
    if (y % 2 != 0) {
        return 0.0;
    }
    return sign * (y % 4 == 0 ? 1.0 : -1.0);
}

} // namespace ghzlab
