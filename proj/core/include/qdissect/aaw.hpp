#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qdissect/dissector.hpp"
#include "qdissect/series.hpp"

namespace qdissect {

/// phi(q) = 1 + 2 sum_{n>=1} q^{n^2}, over Z.
Series phi(std::size_t precision);

/// s = phi(q^3)^3 / phi(q),  t = (phi(q)^2 - phi(q^3)^2) / (4 q phi(q^3)^2).
struct ParamPair {
  Series s;
  Series t;
};

/// Both series have constant term 1. The divisions by q and by 4 are exact;
/// std::domain_error is thrown if the numerator fails either.
ParamPair compute_params(std::size_t precision);

/// Exponents of f_r^24 = s^12 t^a (1-2qt)^b (1+qt)^c (1+2qt)^d (1+4qt)^e.
struct ParamRelation {
  unsigned r;
  int t_exp;
  int minus2;
  int plus1;
  int plus2;
  int plus4;
};

/// Relations for f1, f2, f3, f4, f6, f12 (fractional exponents times 24).
inline constexpr std::array<ParamRelation, 6> kParamRelations{{
    {1, 1, 12, 3, 4, 3},
    {2, 2, 6, 6, 2, 6},
    {3, 3, 4, 1, 12, 1},
    {4, 4, 3, 12, 1, 3},
    {6, 6, 2, 2, 6, 2},
    {12, 12, 1, 4, 3, 1},
}};

/// Right-hand side of one 24th-power relation at the given precision.
Series param_relation_rhs(const ParamPair& p, const ParamRelation& rel, std::size_t precision);

/// One report per relation, id "f<r>^24".
std::vector<VerificationReport> verify_param_identities(const ParamPair& p, std::size_t precision);

/// L(q) = -f2^4 f3^8/(f1^2 f4^2 f6) + 8q f2 f4 f6^8/(f1^2 f12)
///        + f2^10 f3^4 f6^5/(f1^6 f4^4 f12^2) + 4q f2^4 f3^6 f12^2/(f1^4 f6),
/// built term by term from eta expansions.
Series compute_L(std::size_t precision);

/// The same L(q) written in the eta DSL, for a second evaluation path.
inline constexpr const char* kLExpression =
    "-f2^4*f3^8/(f1^2*f4^2*f6) + 8*q*f2*f4*f6^8/(f1^2*f12) + f2^10*f3^4*f6^5/(f1^6*f4^4*f12^2)"
    " + 4*q*f2^4*f3^6*f12^2/(f1^4*f6)";

/// L(q) * f4^2 f6 / f3^2 == 16 q s^4 t^2 (1+qt)^3 (1+2qt) (1+4qt) over Z.
VerificationReport verify_L_identity(std::size_t precision);

}  // namespace qdissect
