#pragma once

// JSON forms of the library types. Complex numbers are [re, im] pairs;
// non-finite reals become null.

#include "json.hpp"

#include "bergman/functions.hpp"
#include "bergman/lifting.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/witness.hpp"

namespace bergman {

using json = nlohmann::json;

json real_to_json(double x);
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"variant": "taylor", "coeffs": [[re, im], ...]}, {"variant": "power",
/// "s": 0.9}, {"variant": "log"}, or {"variant": "ball_poly", "n": 2,
/// "terms": [{"exponents": [1, 0], "coeff": [re, im]}, ...]}.
json to_json(const HoloFunction& f);
/// Throws ConfigError on malformed input.
HoloFunction holo_function_from_json(const json& j);

json to_json(const NormResult& r);
json to_json(const ViolationReport& r);
json to_json(const Witness& w);
json to_json(const BallWitness& w);
json to_json(const LiftingScanResult& scan);

}  // namespace bergman
