#include "ghzlab/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace ghzlab {

namespace {

// i-exponent of the product of two single-site letters: a*b = i^e * (a xor b)
// in the symplectic sense. Rows indexed by the left factor.
constexpr int kProductExp[4][4] = {
    // I  X  Y  Z
    {0, 0, 0, 0}, // I
    {0, 0, 1, 3}, // X   X*Y = iZ, X*Z = -iY
    {0, 3, 0, 1}, // Y   Y*X = -iZ, Y*Z = iX
    {0, 1, 3, 0}, // Z   Z*X = iY, Z*Y = -iX
};

constexpr PauliLetter kProductLetter[4][4] = {
    {PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z},
    {PauliLetter::X, PauliLetter::I, PauliLetter::Z, PauliLetter::Y},
    {PauliLetter::Y, PauliLetter::Z, PauliLetter::I, PauliLetter::X},
    {PauliLetter::Z, PauliLetter::Y, PauliLetter::X, PauliLetter::I},
};

void require_same_size(const PauliString& p, const PauliString& q) {
    if (p.qubit_count() != q.qubit_count()) {
        throw std::invalid_argument("pauli strings act on different qubit counts: " +
                                    std::to_string(p.qubit_count()) + " vs " +
                                    std::to_string(q.qubit_count()));
    }
}

} // namespace

char letter_char(PauliLetter l) {
    static const char chars[4] = {'I', 'X', 'Y', 'Z'};
    return chars[static_cast<int>(l)];
}

PauliString::PauliString(std::vector<PauliLetter> letters, Phase phase)
    : letters_(std::move(letters)), phase_(phase) {
    if (letters_.empty()) {
        throw std::invalid_argument("pauli string needs at least one qubit");
    }
}

PauliString PauliString::identity(int n) {
    return repeated(n, PauliLetter::I);
}

PauliString PauliString::repeated(int n, PauliLetter l, Phase phase) {
    if (n < 1) {
        throw std::invalid_argument("qubit count must be positive");
    }
    return PauliString(std::vector<PauliLetter>(static_cast<std::size_t>(n), l), phase);
}

PauliString PauliString::parse(std::string_view text) {
    Phase phase;
    if (text.starts_with("+i") || text.starts_with("i")) {
        phase = Phase::from_i_exponent(1);
        text.remove_prefix(text.starts_with("+i") ? 2 : 1);
    } else if (text.starts_with("-i")) {
        phase = Phase::from_i_exponent(3);
        text.remove_prefix(2);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    } else if (text.starts_with("-")) {
        phase = Phase::from_i_exponent(2);
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("pauli string has no letters");
    }
    std::vector<PauliLetter> letters;
    letters.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'I': letters.push_back(PauliLetter::I); break;
            case 'X': letters.push_back(PauliLetter::X); break;
            case 'Y': letters.push_back(PauliLetter::Y); break;
            case 'Z': letters.push_back(PauliLetter::Z); break;
            default:
                throw std::invalid_argument(std::string("invalid pauli letter '") + c +
                                            "' (expected I, X, Y, or Z)");
        }
    }
    return PauliString(std::move(letters), phase);
}

std::string PauliString::str() const {
    std::string out;
    if (phase_ != Phase()) {
        out = phase_.str();
    }
    out.reserve(out.size() + letters_.size());
    for (PauliLetter l : letters_) {
        out.push_back(letter_char(l));
    }
    return out;
}

PauliLetter PauliString::letter(int qubit) const {
    if (qubit < 1 || qubit > qubit_count()) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside 1.." +
                                std::to_string(qubit_count()));
    }
    return letters_[static_cast<std::size_t>(qubit - 1)];
}

int PauliString::count(PauliLetter l) const {
    int c = 0;
    for (PauliLetter x : letters_) {
        c += (x == l);
    }
    return c;
}

std::vector<int> PauliString::flip_support() const {
    std::vector<int> support;
    for (int k = 1; k <= qubit_count(); ++k) {
        PauliLetter l = letters_[static_cast<std::size_t>(k - 1)];
        if (l == PauliLetter::X || l == PauliLetter::Y) {
            support.push_back(k);
        }
    }
    return support;
}

std::uint64_t PauliString::mask_of(PauliLetter a, PauliLetter b) const {
    if (qubit_count() > 64) {
        throw std::invalid_argument("bit masks require at most 64 qubits");
    }
    std::uint64_t m = 0;
    for (int k = 0; k < qubit_count(); ++k) {
        PauliLetter l = letters_[static_cast<std::size_t>(k)];
        if (l == a || l == b) {
            m |= std::uint64_t{1} << k;
        }
    }
    return m;
}

std::uint64_t PauliString::flip_mask() const { return mask_of(PauliLetter::X, PauliLetter::Y); }
std::uint64_t PauliString::y_mask() const { return mask_of(PauliLetter::Y, PauliLetter::Y); }
std::uint64_t PauliString::z_mask() const { return mask_of(PauliLetter::Z, PauliLetter::Z); }

PauliString compose(const PauliString& p, const PauliString& q) {
    require_same_size(p, q);
    std::vector<PauliLetter> letters(p.letters().size());
    int exp = p.phase().i_exponent() + q.phase().i_exponent();
    for (std::size_t k = 0; k < letters.size(); ++k) {
        int a = static_cast<int>(p.letters()[k]);
        int b = static_cast<int>(q.letters()[k]);
        letters[k] = kProductLetter[a][b];
        exp += kProductExp[a][b];
    }
    return PauliString(std::move(letters), Phase::from_i_exponent(exp));
}

bool commutes(const PauliString& p, const PauliString& q) {
    require_same_size(p, q);
    int anticommuting = 0;
    for (std::size_t k = 0; k < p.letters().size(); ++k) {
        PauliLetter a = p.letters()[k];
        PauliLetter b = q.letters()[k];
        if (a != PauliLetter::I && b != PauliLetter::I && a != b) {
            ++anticommuting;
        }
    }
    return anticommuting % 2 == 0;
}

BasisAction basis_action(const PauliString& p, const BasisState& b) {
    if (p.qubit_count() != b.n) {
        throw std::invalid_argument("pauli string and basis state qubit counts differ: " +
                                    std::to_string(p.qubit_count()) + " vs " +
                                    std::to_string(b.n));
    }
    // Per site: X|b> = |1-b>, Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>.
    int exp = p.phase().i_exponent() + p.count(PauliLetter::Y);
    exp += 2 * std::popcount(b.bits & (p.y_mask() | p.z_mask()));
    return BasisAction{BasisState{b.n, b.bits ^ p.flip_mask()}, Phase::from_i_exponent(exp)};
}

} // namespace ghzlab
