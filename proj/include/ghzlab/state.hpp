#pragma once

#include <complex>
#include <vector>

#include "ghzlab/pauli.hpp"

namespace ghzlab {

/// Largest qubit count the dense engine will materialize (2^24 amplitudes).
inline constexpr int kDefaultDenseCap = 24;

/// Tolerance for all floating-point equality checks on expectation values.
/// GHZ amplitudes and Pauli phases are dyadic/quartic-root exact, so dense
/// results are exact up to accumulation at this scale.
inline constexpr double kExpectationTol = 1e-12;

/// Dense complex amplitude vector for n qubits, indexed by basis bit
/// pattern (bit k-1 belongs to qubit k).
struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amplitudes;
};

/// (|00...0> + |11...1>)/sqrt(2) in the z eigenbasis, i.e. amplitude
/// 1/sqrt(2) at the all-zeros and all-ones patterns.
/// Throws std::invalid_argument when n is outside 1..dense_cap; the
/// closed-form engine handles larger n.
StateVector make_ghz(int n, int dense_cap = kDefaultDenseCap);

double norm_squared(const StateVector& state);

/// <psi|p|psi> for a Hermitian string, computed in one pass that pairs
/// each basis index with its flipped partner. No operator matrix is ever
/// built. Throws std::invalid_argument on a non-Hermitian phase or a
/// dimension mismatch.
double expectation(const StateVector& state, const PauliString& p);

/// GHZ_n expectation of a Hermitian string for arbitrary n, no dense cap.
/// With F the flip support, k the Y count, and m the Z count:
///   F a nonempty proper subset of the sites -> 0
///   F empty                                 -> 1 if m even, else 0
///   F all sites (so m = 0)                  -> 0 if k odd, (-1)^(k/2) if k even
/// scaled by the string's +/-1 phase.
double ghz_expectation_closed_form(int n, const PauliString& p);

} // namespace ghzlab
