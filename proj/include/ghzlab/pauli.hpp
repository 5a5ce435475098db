#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghzlab {

/// Global phase of a Pauli string: i^e with e in Z_4. Closed under
/// multiplication, never stored as a floating-point complex number.
class Phase {
  public:
    constexpr Phase() = default;

    static constexpr Phase from_i_exponent(int e) {
        Phase p;
        p.exp_ = static_cast<std::uint8_t>(((e % 4) + 4) % 4);
        return p;
    }

    constexpr int i_exponent() const { return exp_; }

    /// True for +1 and -1 (the Hermitian phases).
    constexpr bool is_real() const { return exp_ == 0 || exp_ == 2; }

    /// +1 or -1; only meaningful when is_real().
    constexpr int real_sign() const { return exp_ == 0 ? 1 : -1; }

    constexpr Phase operator*(Phase o) const { return from_i_exponent(exp_ + o.exp_); }

    std::complex<double> to_complex() const {
        switch (exp_) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }

    /// "+", "+i", "-", or "-i".
    std::string str() const {
        static const char* names[4] = {"+", "+i", "-", "-i"};
        return names[exp_];
    }

    friend constexpr bool operator==(Phase a, Phase b) { return a.exp_ == b.exp_; }
    friend constexpr bool operator!=(Phase a, Phase b) { return a.exp_ != b.exp_; }

  private:
    std::uint8_t exp_ = 0;
};

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter l);

/// Computational basis state of n qubits in the z eigenbasis.
/// Bit k-1 of `bits` belongs to qubit k (1-based): 0 is the +1 eigenstate
/// of sigma_z, 1 the -1 eigenstate. Requires n <= 64.
struct BasisState {
    int n = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Tensor product of single-qubit spin operators with a tracked global
/// phase. Qubit indices are 1-based; letter(1) acts on the first tensor
/// factor, which is the leftmost character of the text form.
class PauliString {
  public:
    PauliString(std::vector<PauliLetter> letters, Phase phase = Phase());

    static PauliString identity(int n);

    /// Repeats one letter on all n sites, e.g. the all-X observable.
    static PauliString repeated(int n, PauliLetter l, Phase phase = Phase());

    /// Text form: optional phase prefix ("+", "-", "+i", "-i") followed by
    /// one of I, X, Y, Z per qubit. Throws std::invalid_argument on
    /// malformed input.
    static PauliString parse(std::string_view text);

    /// Canonical text form; the "+" prefix is omitted. Round-trips
    /// bit-exactly through parse().
    std::string str() const;

    int qubit_count() const { return static_cast<int>(letters_.size()); }
    PauliLetter letter(int qubit) const; // 1-based
    const std::vector<PauliLetter>& letters() const { return letters_; }
    Phase phase() const { return phase_; }
    bool is_hermitian() const { return phase_.is_real(); }

    int count(PauliLetter l) const;

    /// Sites carrying X or Y, i.e. the qubits whose basis bit the string
    /// flips. 1-based indices in increasing order.
    std::vector<int> flip_support() const;

    /// Bit k-1 set iff letter k is X or Y. Requires n <= 64.
    std::uint64_t flip_mask() const;
    /// Bit k-1 set iff letter k is Y (respectively Z). Requires n <= 64.
    std::uint64_t y_mask() const;
    std::uint64_t z_mask() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    std::uint64_t mask_of(PauliLetter a, PauliLetter b) const;

    std::vector<PauliLetter> letters_;
    Phase phase_;
};

/// Operator product p*q with the accumulated phase. Associative.
/// Throws std::invalid_argument on a qubit-count mismatch.
PauliString compose(const PauliString& p, const PauliString& q);

/// True iff p*q == q*p, decided by the parity of anticommuting sites.
bool commutes(const PauliString& p, const PauliString& q);

/// p|b> = phase |b'> with b' = b XOR flip_mask(p).
struct BasisAction {
    BasisState state;
    Phase phase;
};

BasisAction basis_action(const PauliString& p, const BasisState& b);

} // namespace ghzlab
