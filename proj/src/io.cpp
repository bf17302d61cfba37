#include "liechannel/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace liechannel::io {

namespace {

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json vec(const LieVec& v) {
  json a = json::array();
  for (int i = 0; i < 6; ++i) a.push_back(v[i]);
  return a;
}

Vec3 vec3_from(const json& a, const char* what) {
  if (!a.is_array() || a.size() != 3) throw FormatError(std::string(what) + ": expected 3 numbers");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

LieVec lie_from(const json& a) {
  if (!a.is_array() || a.size() != 6) throw FormatError("contact: expected two arrays of 6 numbers");
  LieVec v;
  for (int i = 0; i < 6; ++i) v[i] = a[i].get<double>();
  return v;
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw FormatError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

json describe(const LieVec& sigma) {
  const auto d = unlift_mobius(sigma);
  if (const auto* s = std::get_if<Sphere>(&d)) return {{"center", vec(s->center)}, {"radius", s->radius}};
  if (const auto* p = std::get_if<Plane>(&d)) return {{"normal", vec(p->normal)}, {"offset", p->offset}};
  return nullptr;
}

LieVec sphere_from(const json& s) {
  if (s.contains("center")) {
    const double r = field(s, "radius").get<double>();
    if (r == 0.0) throw FormatError("sphere radius must be nonzero");
    return mobius_sphere(vec3_from(s["center"], "center"), r);
  }
  const Vec3 n = vec3_from(field(s, "normal"), "normal");
  if (n.norm() == 0.0) throw FormatError("plane normal must be nonzero");
  return mobius_plane(n.normalized(), field(s, "offset").get<double>() / n.norm());
}

// Euclidean point of a point sphere, nullopt at infinity.
std::optional<Vec3> finite_point(const LieVec& x) {
  const double u0 = x[basis::kOrigin];
  if (std::abs(u0) <= 1e-12 * x.norm()) return std::nullopt;
  return Vec3(x.head<3>() / u0);
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

json complex_to_json(const QuadComplex& c) {
  if (const auto& g = c.grid())
    return {{"n_plus", g->n_plus}, {"n_minus", g->n_minus}, {"wrap_plus", g->wrap_plus},
            {"wrap_minus", g->wrap_minus}};
  json edges = json::array(), faces = json::array();
  for (const auto& e : c.edges()) edges.push_back({e.a, e.b, to_string(e.label)});
  for (const auto& f : c.faces()) faces.push_back({f.v[0], f.v[1], f.v[2], f.v[3]});
  return {{"vertex_count", c.vertex_count()}, {"edges", edges}, {"faces", faces}};
}

QuadComplex complex_from_json(const json& doc) {
  return guarded([&] {
    QuadComplex c;
    try {
      if (doc.contains("n_plus")) {
        GridShape g{field(doc, "n_plus").get<int>(), field(doc, "n_minus").get<int>(),
                    doc.value("wrap_plus", false), doc.value("wrap_minus", false)};
        if (g.n_plus < 2 || g.n_minus < 2) throw FormatError("grid needs n_plus, n_minus >= 2");
        c = make_grid(g);
      } else {
        std::vector<Edge> edges;
        for (const auto& e : field(doc, "edges")) {
          const std::string l = e.at(2).get<std::string>();
          if (l != "+" && l != "-") throw FormatError("edge label must be \"+\" or \"-\"");
          edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), l == "+" ? Label::Plus : Label::Minus});
        }
        std::vector<Face> faces;
        for (const auto& f : field(doc, "faces")) {
          if (f.size() != 4) throw FormatError("faces need 4 vertices");
          faces.push_back({{f[0].get<int>(), f[1].get<int>(), f[2].get<int>(), f[3].get<int>()}});
        }
        c = QuadComplex(field(doc, "vertex_count").get<int>(), std::move(edges), std::move(faces));
      }
    } catch (const GeometryError& e) {
      throw FormatError(std::string("invalid complex: ") + e.what());
    }
    const auto diag = validate(c);
    if (!diag.empty()) throw FormatError("invalid complex: " + diag.front().message);
    return c;
  });
}

json contact_to_json(const ContactElement& f) {
  const LieVec x = f.point_sphere();
  if (const auto p = finite_point(x)) {
    const LieVec n = space_form_normal(f);
    return {{"point", vec(*p)}, {"normal", vec(Vec3(n.head<3>()))}};
  }
  return {{"contact", {vec(f.generator(0)), vec(f.generator(1))}}};
}

ContactElement contact_from_json(const json& v, const Tolerances& tol) {
  return guarded([&] {
    if (v.contains("contact")) {
      const auto& c = v["contact"];
      if (!c.is_array() || c.size() != 2) throw FormatError("contact: expected two arrays of 6 numbers");
      return ContactElement::from_spheres(lie_from(c[0]), lie_from(c[1]), tol);
    }
    const Vec3 x = vec3_from(field(v, "point"), "point");
    const Vec3 n = vec3_from(field(v, "normal"), "normal");
    if (n.norm() < 1e-12) throw FormatError("normal must be nonzero");
    return contact_from_point_normal(x, n.normalized());
  });
}

json net_to_json(const LegendreNet& net, bool hexaspherical) {
  json verts = json::array();
  for (const auto& f : net.elements()) {
    if (hexaspherical)
      verts.push_back({{"contact", {vec(f.generator(0)), vec(f.generator(1))}}});
    else
      verts.push_back(contact_to_json(f));
  }
  return {{"complex", complex_to_json(net.complex())}, {"vertices", verts}};
}

LegendreNet net_from_json(const json& doc, const Tolerances& tol) {
  const QuadComplex c = complex_from_json(field(doc, "complex"));
  const auto& verts = field(doc, "vertices");
  if (!verts.is_array() || static_cast<int>(verts.size()) != c.vertex_count())
    throw FormatError("expected " + std::to_string(c.vertex_count()) + " vertices");
  std::vector<ContactElement> f;
  for (const auto& v : verts) f.push_back(contact_from_json(v, tol));
  const auto rep = is_legendre(c, f, tol);
  if (!rep.ok()) {
    std::string msg = "not a discrete Legendre map:";
    for (std::size_t i = 0; i < rep.failures.size() && i < 5; ++i)
      msg += " [edge " + std::to_string(rep.failures[i].edge) + ": " + rep.failures[i].message + "]";
    if (rep.failures.size() > 5) msg += " ...";
    throw GeometryError(msg);
  }
  return LegendreNet(c, std::move(f), tol);
}

json sphere_curve_to_json(const SphereCurve& sc) {
  json s = json::array(), sg = json::array();
  for (const auto& v : sc.s) s.push_back(describe(v));
  for (const auto& v : sc.sigma) sg.push_back(describe(v));
  return {{"closed", sc.closed}, {"vertex_spheres", s}, {"edge_spheres", sg}};
}

SphereCurve sphere_curve_from_json(const json& doc) {
  return guarded([&] {
    SphereCurve sc;
    sc.closed = doc.value("closed", false);
    for (const auto& s : field(doc, "vertex_spheres")) sc.s.push_back(sphere_from(s));
    for (const auto& s : field(doc, "edge_spheres")) sc.sigma.push_back(sphere_from(s));
    return sc;
  });
}

json curve_to_json(const DiscreteCurve3D& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(vec(p));
  return {{"closed", c.closed}, {"points", pts}};
}

DiscreteCurve3D curve_from_json(const json& doc) {
  return guarded([&] {
    DiscreteCurve3D c;
    c.closed = doc.value("closed", false);
    for (const auto& p : field(doc, "points")) c.points.push_back(vec3_from(p, "point"));
    if (c.points.size() < 2) throw FormatError("curve needs at least 2 points");
    return c;
  });
}

json certificate_to_json(const ChannelCertificate& cert) {
  json lines = json::array(), ribbons = json::array();
  for (const auto& l : cert.lines) {
    json j{{"vertices", l.line.vertices},
           {"closed", l.line.closed},
           {"sphere", vec(l.sphere)},
           {"constancy", l.constancy},
           {"envelope_residual", l.envelope_residual}};
    if (cert.derived_ok()) {
      j["circle_mismatch"] = l.circle_mismatch;
      j["circle_residual"] = l.circle_residual;
      j["quer_sphere"] = describe(l.quer_sphere);
    }
    lines.push_back(j);
  }
  for (const auto& r : cert.ribbons) {
    json j{{"left", r.left}, {"right", r.right}, {"faces", r.ribbon.faces}};
    if (cert.derived_ok()) {
      j["face_sphere"] = describe(r.face_sphere);
      j["face_quer_sphere"] = describe(r.face_quer_sphere);
      j["face_quer_residual"] = r.face_quer_residual;
    }
    ribbons.push_back(j);
  }
  json out{{"direction", to_string(cert.direction)}, {"lines", lines}, {"ribbons", ribbons}};
  out["derived_error"] = cert.derived_ok() ? json(nullptr) : json(cert.derived_error);
  return out;
}

json curvature_to_json(const CurvatureReport& rep) {
  json faces = json::array(), edges = json::array();
  for (const auto& f : rep.faces)
    faces.push_back({{"K", f.K},
                     {"H", f.H},
                     {"residual", f.residual},
                     {"identity_residual", f.identity_residual},
                     {"printed_identity_residual", f.printed_identity_residual}});
  for (const auto& e : rep.edges) edges.push_back({{"kappa", e.kappa}, {"residual", e.residual}});
  return {{"faces", faces},
          {"edges", edges},
          {"max_face_residual", rep.max_face_residual},
          {"max_edge_residual", rep.max_edge_residual},
          {"max_identity_residual", rep.max_identity_residual}};
}

json vessiot_to_json(const VessiotClass& vc) {
  return {{"class", to_string(vc.type)},
          {"span_dim", vc.witness.dim()},
          {"signature", {vc.signature.n_plus, vc.signature.n_minus, vc.signature.n_null}}};
}

void write_obj(std::ostream& out, const LegendreNet& net, const ChannelCertificate* circles,
               int samples) {
  out.precision(17);
  auto emit = [&](const Vec3& x) { out << "v " << x.x() << ' ' << x.z() << ' ' << -x.y() << '\n'; };
  out << "o net\n";
  for (const auto& f : net.elements()) {
    const auto p = finite_point(f.point_sphere());
    if (!p) throw GeometryError("vertex at infinity cannot be exported to OBJ");
    emit(*p);
  }
  for (const auto& f : net.complex().faces())
    out << "f " << f.v[0] + 1 << ' ' << f.v[1] + 1 << ' ' << f.v[2] + 1 << ' ' << f.v[3] + 1 << '\n';
  if (!circles || !circles->derived_ok()) return;

  int next = net.complex().vertex_count() + 1;
  for (std::size_t i = 0; i < circles->lines.size(); ++i) {
    const auto& l = circles->lines[i];
    std::vector<Vec3> poly;
    const bool straight = l.circle.plus.residual(basis::einf()) <= 1e-8;
    if (straight) {
      // straight generating line: cover the span of its vertices
      const Vec3 a = net.point(l.line.vertices.front());
      Vec3 dir = Vec3::Zero();
      for (int v : l.line.vertices)
        if ((net.point(v) - a).norm() > dir.norm()) dir = net.point(v) - a;
      double lo = 0.0, hi = 1.0;
      for (int v : l.line.vertices) {
        const double t = (net.point(v) - a).dot(dir) / dir.squaredNorm();
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      for (int k = 0; k < samples; ++k) poly.push_back(a + (lo + (hi - lo) * k / (samples - 1)) * dir);
    } else {
      const auto fr = gram_frame(l.circle.plus);
      if (fr.timelike.size() != 1 || fr.spacelike.size() != 2) continue;
      for (int k = 0; k < samples; ++k) {
        const double t = 2 * std::numbers::pi * k / samples;
        if (auto p = finite_point(fr.timelike[0] + std::cos(t) * fr.spacelike[0] +
                                  std::sin(t) * fr.spacelike[1]))
          poly.push_back(*p);
      }
    }
    out << "o circle_" << i << '\n';
    for (const auto& p : poly) emit(p);
    out << 'l';
    for (std::size_t k = 0; k < poly.size(); ++k) out << ' ' << next + static_cast<int>(k);
    // closed circle: repeat the first index instead of a duplicate vertex
    if (static_cast<int>(poly.size()) == samples && !straight) out << ' ' << next;
    out << '\n';
    next += static_cast<int>(poly.size());
  }
}

}  // namespace liechannel::io
