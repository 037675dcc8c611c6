#include "closed_form.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <string_view>

#include "lincheck/errors.hpp"

namespace lincheck::criteria::detail {

namespace {

using sym::Polynomial;

// Entry "u k" is the coefficient of D_k in the numerator of unknown u; every
// unknown is that numerator divided by the determinant below. Implicit
// multiplication, integer coefficients, variables P..W.
struct Entry {
  const char* name;
  const char* text;
};

constexpr Entry kEntries[] = {
    {"a1",
     "3(-9S^2TU^2 + RSU^3 + 27S^2T^2V - QSU^2V - 3QSTV^2 + 3PSUV^2 - 27RST^2W + 18QSTUW - "
     "QRU^2W + 3QRTVW - 27PSTVW + Q^2UVW - 3PRUVW - 9Q^2TW^2 + 27PRTW^2)"},
    {"a2",
     "2(9RSTU^2 - R^2U^3 - 27RST^2V + 2QRU^2V - 9PSU^2V + 27PSTV^2 - Q^2UV^2 + 27R^2T^2W - "
     "18QRTUW + 9PRU^2W + 9Q^2TVW - 27PRTVW)"},
    {"a3",
     "3(QT - PU)(-3SU^2 + 9STV + RUV - QV^2 - 9RTW + 3QUW)"},
    {"a4",
     "-3(QRSU^2 - 9PS^2U^2 - 3QRSTV + 27PS^2TV - Q^2SUV + 3PRSUV + 3QR^2TW - 27PRSTW - Q^2RUW "
     "- 3PR^2UW + 18PQSUW + Q^3VW - 27P^2SVW - 9PQ^2W^2 + 27P^2RW^2)"},
    {"a5",
     "2(QR^2U^2 - 9PRSU^2 - 9Q^2STV + 27PRSTV - 2Q^2RUV + 18PQSUV + Q^3V^2 - 27P^2SV^2 + "
     "9Q^2RTW - 27PR^2TW - 9PQ^2VW + 27P^2RVW)"},
    {"a6",
     "-3(QT - PU)(R^2U - 3QSU - QRV + 9PSV + 3Q^2W - 9PRW)"},
    {"b1",
     "-3(3S^2U^3 - 9S^2TUV - 2RSU^2V + 3RSTV^2 + 2QSUV^2 - 3PSV^3 + 9RSTUW + R^2U^2W - 6QSU^2W "
     "- 3R^2TVW + 9PSUVW - Q^2V^2W + 3PRV^2W + 3Q^2UW^2 - 9PRUW^2)"},
    {"b2",
     "-2(RU - QV)(-3SU^2 + 9STV + RUV - QV^2 - 9RTW + 3QUW)"},
    {"b3",
     "-(RU - QV)(RU^2 - 3RTV - QUV + 3PV^2 + 9QTW - 9PUW)"},
    {"b4",
     "-3(R^2SU^2 - 3QS^2U^2 - 3R^2STV + 9QS^2TV - Q^2SV^2 + 3PRSV^2 + 3R^3TW - 9QRSTW - "
     "2QR^2UW + 6Q^2SUW + 2Q^2RVW - 3PR^2VW - 9PQSVW - 3Q^3W^2 + 9PQRW^2)"},
    {"b5",
     "2(RU - QV)(R^2U - 3QSU - QRV + 9PSV + 3Q^2W - 9PRW)"},
    {"b6",
     "-(RU - QV)(3R^2T - 9QST - QRU + 9PSU + Q^2V - 3PRV)"},
    {"c1",
     "-3(SV - RW)(3SU^2 - 9STV - RUV + QV^2 + 9RTW - 3QUW)"},
    {"c2",
     "-6(-SV + RW)(RU^2 - 3RTV - QUV + 3PV^2 + 9QTW - 9PUW)"},
    {"c3",
     "-(R^2U^2V - 9QSTV^2 - 2QRUV^2 + 9PSUV^2 + Q^2V^3 - 9R^2TUW + 27QSTUW - 27PSU^2W + "
     "18QRTVW - 9PQV^2W - 27Q^2TW^2 + 27PQUW^2)"},
    {"c4",
     "3(-SV + RW)(R^2U - 3QSU - QRV + 9PSV + 3Q^2W - 9PRW)"},
    {"c5",
     "-6(3R^2T - 9QST - QRU + 9PSU + Q^2V - 3PRV)(-SV + RW)"},
    {"c6",
     "(-9R^2STU + 27QS^2TU + R^3U^2 - 27PS^2U^2 - 2QR^2UV + 18PRSUV + Q^2RV^2 - 9PQSV^2 + "
     "9QR^2TW - 27Q^2STW - 9PR^2UW + 27PQSUW)"},
    {"d1",
     "(9RSTU^2 - R^2U^3 - 27RST^2V + 2QRU^2V - 9PSU^2V + 27PSTV^2 - Q^2UV^2 + 27R^2T^2W - "
     "18QRTUW + 9PRU^2W + 9Q^2TVW - 27PRTVW)"},
    {"d2",
     "6(QT - PU)(-3SU^2 + 9STV + RUV - QV^2 - 9RTW + 3QUW)"},
    {"d3",
     "3(QT - PU)(RU^2 - 3RTV - QUV + 3PV^2 + 9QTW - 9PUW)"},
    {"d4",
     "(QR^2U^2 - 9PRSU^2 - 9Q^2STV + 27PRSTV - 2Q^2RUV + 18PQSUV + Q^3V^2 - 27P^2SV^2 + "
     "9Q^2RTW - 27PR^2TW - 9PQ^2VW + 27P^2RVW)"},
    {"d5",
     "-6(QT - PU)(R^2U - 3QSU - QRV + 9PSV + 3Q^2W - 9PRW)"},
    {"d6",
     "3(QT - PU)(3R^2T - 9QST - QRU + 9PSU + Q^2V - 3PRV)"},
    {"e1",
     "-(RU - QV)(-3SU^2 + 9STV + RUV - QV^2 - 9RTW + 3QUW)"},
    {"e2",
     "-2(RU - QV)(RU^2 - 3RTV - QUV + 3PV^2 + 9QTW - 9PUW)"},
    {"e3",
     "-3(-R^2TU^2 + 3QSTU^2 - 3PSU^3 + 3R^2T^2V - 9QST^2V + 9PSTUV + 2PRU^2V + Q^2TV^2 - "
     "6PRTV^2 - 2PQUV^2 + 3P^2V^3 - 3Q^2TUW + 3PQU^2W + 9PQTVW - 9P^2UVW)"},
    {"e4",
     "(RU - QV)(R^2U - 3QSU - QRV + 9PSV + 3Q^2W - 9PRW)"},
    {"e5",
     "-2(RU - QV)(3R^2T - 9QST - QRU + 9PSU + Q^2V - 3PRV)"},
    {"e6",
     "3(3R^3T^2 - 9QRST^2 - 2QR^2TU + 3Q^2STU + 9PRSTU + PR^2U^2 - 3PQSU^2 + 2Q^2RTV - 6PR^2TV "
     "- PQ^2V^2 + 3P^2RV^2 - 3Q^3TW + 9PQRTW + 3PQ^2UW - 9P^2RUW)"},
    {"f1",
     "3(SV - RW)(RU^2 - 3RTV - QUV + 3PV^2 + 9QTW - 9PUW)"},
    {"f2",
     "-2(R^2U^2V - 9QSTV^2 - 2QRUV^2 + 9PSUV^2 + Q^2V^3 - 9R^2TUW + 27QSTUW - 27PSU^2W + "
     "18QRTVW - 9PQV^2W - 27Q^2TW^2 + 27PQUW^2)"},
    {"f3",
     "-3(-R^2TUV + 3QSTUV - 3PSU^2V + QRTV^2 + PRUV^2 - PQV^3 + 9R^2T^2W - 27QST^2W - 3QRTUW + "
     "27PSTUW + 3PRU^2W - 18PRTVW + 9P^2V^2W + 27PQTW^2 - 27P^2UW^2)"},
    {"f4",
     "-3(3R^2T - 9QST - QRU + 9PSU + Q^2V - 3PRV)(-SV + RW)"},
    {"f5",
     "2(-9R^2STU + 27QS^2TU + R^3U^2 - 27PS^2U^2 - 2QR^2UV + 18PRSUV + Q^2RV^2 - 9PQSV^2 + "
     "9QR^2TW - 27Q^2STW - 9PR^2UW + 27PQSUW)"},
    {"f6",
     "-3(-9R^2ST^2 + 27QS^2T^2 + R^3TU - 27PS^2TU - QR^2TV - 3Q^2STV + 18PRSTV - PR^2UV + "
     "3PQSUV + PQRV^2 - 9P^2SV^2 + 3Q^2RTW - 27PQSTW - 3PQRUW + 27P^2SUW)"},
};

constexpr const char* kDelta =
    "2(-R^3(U^3 - 27T^2W) - 9Q^2(2ST + PW)(V^2 - 3UW) + 27PS(SU^3 - 3STUV - PV^3 + 3PUVW) + "
    "Q^3(V^3 - 27TW^2) + 3R^2(3ST(U^2 - 3TV) + 6P(U^2 - 3TV)W + QU(UV - 9TW)) + 27QS(ST(-U^2 "
    "+ 3TV) + P(UV^2 - 2U^2W - 3TVW)) + 3R(Q^2V(-UV + 9TW) - 3Q(ST - PW)(-UV + 9TW) + "
    "9P(PW(V^2 - 3UW) + S(-U^2V + 2TV^2 + 3TUW))))";

// ---- integer polynomials in P..W --------------------------------------------

using Exponents = std::array<std::uint8_t, 8>;
using MPoly8 = std::map<Exponents, mpz_class>;

MPoly8 constant(long c) {
  MPoly8 p;
  if (c != 0) p[Exponents{}] = c;
  return p;
}

void add_into(MPoly8& acc, const MPoly8& b, int sign) {
  for (const auto& [e, c] : b) {
    mpz_class& slot = acc[e];
    if (sign > 0) {
      slot += c;
    } else {
      slot -= c;
    }
    if (slot == 0) acc.erase(e);
  }
}

MPoly8 multiply(const MPoly8& a, const MPoly8& b) {
  MPoly8 out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e;
      for (std::size_t i = 0; i < 8; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      mpz_class& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  MPoly8 parse() {
    MPoly8 p = sum();
    skip();
    if (pos_ != s_.size()) fail();
    return p;
  }

 private:
  [[noreturn]] void fail() const {
    throw Error("malformed closed-form table at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  long integer() {
    long v = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail();
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  MPoly8 sum() {
    MPoly8 acc;
    int sign = 1;
    if (peek() == '-' || peek() == '+') sign = s_[pos_++] == '-' ? -1 : 1;
    add_into(acc, product(), sign);
    while (peek() == '+' || peek() == '-') {
      sign = s_[pos_++] == '-' ? -1 : 1;
      add_into(acc, product(), sign);
    }
    return acc;
  }

  MPoly8 product() {
    MPoly8 acc = constant(1);
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      acc = constant(integer());
      any = true;
    }
    for (;;) {
      const char c = peek();
      if (c == '(') {
        ++pos_;
        MPoly8 inner = sum();
        if (peek() != ')') fail();
        ++pos_;
        acc = multiply(acc, inner);
      } else if (c >= 'P' && c <= 'W') {
        ++pos_;
        long power = 1;
        if (peek() == '^') {
          ++pos_;
          power = integer();
        }
        Exponents e{};
        e[static_cast<std::size_t>(c - 'P')] = static_cast<std::uint8_t>(power);
        acc = multiply(acc, MPoly8{{e, mpz_class(1)}});
      } else {
        break;
      }
      any = true;
    }
    if (!any) fail();
    return acc;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct Table {
  std::array<std::array<MPoly8, 6>, 6> blocks;
  MPoly8 delta;
};

const Table& table() {
  static const Table t = [] {
    Table out;
    for (const Entry& e : kEntries) {
      const std::size_t unknown = static_cast<std::size_t>(e.name[0] - 'a');
      const std::size_t row = static_cast<std::size_t>(e.name[1] - '1');
      out.blocks[unknown][row] = Reader(e.text).parse();
    }
    out.delta = Reader(kDelta).parse();
    return out;
  }();
  return t;
}

// Evaluates integer polynomials at fixed polynomial arguments, sharing powers
// and monomials between calls.
class Evaluator {
 public:
  explicit Evaluator(std::array<Polynomial, 8> args) {
    for (std::size_t v = 0; v < 8; ++v) powers_[v].push_back(Polynomial(1));
    args_ = std::move(args);
  }

  Polynomial operator()(const MPoly8& p) {
    Polynomial acc;
    for (const auto& [e, c] : p) acc += monomial(e).scaled(sym::BigRational(c));
    return acc;
  }

 private:
  const Polynomial& power(std::size_t v, std::size_t k) {
    auto& list = powers_[v];
    while (list.size() <= k) list.push_back(list.back() * args_[v]);
    return list[k];
  }

  const Polynomial& monomial(const Exponents& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    Polynomial m(1);
    for (std::size_t v = 0; v < 8; ++v)
      if (e[v] > 0) m = m * power(v, e[v]);
    return cache_.emplace(e, std::move(m)).first->second;
  }

  std::array<Polynomial, 8> args_;
  std::array<std::vector<Polynomial>, 8> powers_;
  std::map<Exponents, Polynomial> cache_;
};

// Numerators of P..W over their least common denominator.
struct Cleared {
  Polynomial den;
  std::array<Polynomial, 8> num;
};

Cleared clear(const CubicCoeffs& A) {
  Cleared out{Polynomial(1), {}};
  const auto f = A.fields();
  for (const RationalExpr* e : f)
    if (!e->is_zero()) out.den = Polynomial::lcm(out.den, e->den());
  for (std::size_t i = 0; i < 8; ++i)
    out.num[i] = f[i]->is_zero() ? Polynomial() : f[i]->num() * Polynomial::quotient(out.den, f[i]->den());
  return out;
}

}  // namespace

RationalExpr closed_form_delta(const CubicCoeffs& A) {
  const Cleared c = clear(A);
  Evaluator eval(c.num);
  // Δ is homogeneous of degree 6.
  return RationalExpr(eval(table().delta), c.den.pow(6));
}

std::optional<std::array<RationalExpr, 6>> closed_form_unknowns(const CubicCoeffs& A,
                                                                const std::vector<RationalExpr>& D) {
  const Cleared c = clear(A);
  Evaluator eval(c.num);
  const Polynomial delta = eval(table().delta);
  if (delta.is_zero()) return std::nullopt;
  Polynomial dden(1);
  for (const auto& d : D)
    if (!d.is_zero()) dden = Polynomial::lcm(dden, d.den());
  std::array<Polynomial, 6> dnum;
  for (std::size_t k = 0; k < 6; ++k)
    dnum[k] = D[k].is_zero() ? Polynomial() : D[k].num() * Polynomial::quotient(dden, D[k].den());
  // Blocks have degree 5 and Δ degree 6, so one factor of the common
  // denominator survives: u = den * Σ X_k D_k / Δ.
  std::array<RationalExpr, 6> out;
  for (std::size_t u = 0; u < 6; ++u) {
    Polynomial acc;
    for (std::size_t k = 0; k < 6; ++k)
      if (!dnum[k].is_zero()) acc += eval(table().blocks[u][k]) * dnum[k];
    out[u] = RationalExpr(acc * c.den, delta * dden);
  }
  return out;
}

}  // namespace lincheck::criteria::detail
