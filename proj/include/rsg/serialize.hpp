#pragma once
#include <json.hpp>

#include "rsg/langlands.hpp"

namespace rsg {

// Scalar: {n, q, coeffs: [[k, e, num, den], ...]} for sum num/den zeta_n^k sqrt(q)^e.
// All encodings are lossless; the *_from_json functions invert to_json exactly.
nlohmann::json to_json(const Scalar& x);
Scalar scalar_from_json(const nlohmann::json& j);

// PAdic: {p, zero, v, unit, prec} or {p, zero: true, abs_prec}; abs_prec -1 is exact
nlohmann::json to_json(const PAdic& x);
PAdic padic_from_json(const nlohmann::json& j);

// {shift, num: [Scalar], den: [Scalar]} for X^shift num(X) / den(X)
nlohmann::json to_json(const RatFunc& f);
RatFunc ratfunc_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TameCharacter& t);
TameCharacter tame_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParamRecord& r);
ParamRecord param_record_from_json(const nlohmann::json& j);

// float renderings: [re, im] for a Scalar, numerator/denominator coefficient
// pairs for a RatFunc
nlohmann::json to_float_json(const Scalar& x);
nlohmann::json to_float_json(const RatFunc& f);

}  // namespace rsg
