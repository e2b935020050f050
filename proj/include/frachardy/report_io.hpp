#pragma once

#include <string>

#include <json.hpp>

#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/sharpness.hpp"
#include "frachardy/specfun.hpp"
#include "frachardy/verify.hpp"

namespace frachardy::io {

using Json = nlohmann::ordered_json;

// Serializes with every floating value at 17 significant digits; NaN and
// infinities become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const FracParams& p);
Json to_json(const quad::QuadResult& q);
Json to_json(const specfun::ConstantReport& r);
Json to_json(const verify::InequalityReport& r);
Json to_json(const verify::PohozaevReport& r);
Json to_json(const verify::CordobaReport& r);
Json to_json(const verify::RemainderReport& r);
Json to_json(const fraclap::LimitTable& t);
Json to_json(const sharpness::SearchResult& r);

// Comma-joined; fields containing commas, quotes or newlines are quoted.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace frachardy::io
