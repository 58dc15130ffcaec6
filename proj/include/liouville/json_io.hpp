#pragma once

#include <string>

#include <json.hpp>

#include "liouville/canonical.hpp"
#include "liouville/polygon.hpp"
#include "liouville/schwarzian.hpp"
#include "liouville/verify.hpp"

namespace liouville {

using Json = nlohmann::ordered_json;

Json to_json(Cplx z);
Cplx cplx_from_json(const Json& j);

Json to_json(const CanonicalParams& p);
CanonicalParams canonical_params_from_json(const Json& j);

Json to_json(const SchwarzianSpec& s);
SchwarzianSpec schwarzian_spec_from_json(const Json& j);

Json to_json(const Mobius& m);
Mobius mobius_from_json(const Json& j);

// Construction recipe only; cached ODE state is not serialized.
Json to_json(const DevelopingMap& dm);
DevelopingMap developing_map_from_json(const Json& j);

Json to_json(const ResidualReport& r);
Json to_json(const AreaResult& a);
Json to_json(const ImmersedCircularPolygon& poly);
Json to_json(const AlexandrovCertificate& cert);

// CSV of grid samples (columns s,t,v,ev), LF line endings.
std::string field_csv(const MetricField& field, const GridSpec& grid);

// CSV polyline of the polygon boundary (columns arc,s,re,im).
std::string boundary_csv(const DevelopingMap& dm, const ImmersedCircularPolygon& poly,
                         int samples_per_arc = 64);

} // namespace liouville
