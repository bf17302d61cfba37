#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "liechannel/builder.hpp"
#include "liechannel/curvature.hpp"

namespace liechannel::io {

using nlohmann::json;

/// Malformed or unreadable input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& doc);

json complex_to_json(const QuadComplex& c);
QuadComplex complex_from_json(const json& doc);

/// Euclidean vertices ({point, normal}) wherever the point is finite,
/// hexaspherical ({contact: two 6-vectors}) elsewhere or when forced.
json net_to_json(const LegendreNet& net, bool hexaspherical = false);
/// Throws FormatError for malformed documents and GeometryError when the
/// contact elements are not a discrete Legendre map.
LegendreNet net_from_json(const json& doc, const Tolerances& tol = default_tolerances());

json sphere_curve_to_json(const SphereCurve& sc);
SphereCurve sphere_curve_from_json(const json& doc);

json curve_to_json(const DiscreteCurve3D& c);
DiscreteCurve3D curve_from_json(const json& doc);

/// {"point": [...], "normal": [...]} or {"contact": [[6], [6]]}.
json contact_to_json(const ContactElement& f);
ContactElement contact_from_json(const json& doc, const Tolerances& tol = default_tolerances());

json certificate_to_json(const ChannelCertificate& cert);
json curvature_to_json(const CurvatureReport& rep);
json vessiot_to_json(const VessiotClass& vc);

/// OBJ with y up: (x, y, z) is written as (x, z, -y). Generating circles of
/// `circles` become separate objects sampled with `samples` points.
void write_obj(std::ostream& out, const LegendreNet& net, const ChannelCertificate* circles = nullptr,
               int samples = 96);

}  // namespace liechannel::io
