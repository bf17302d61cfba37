// liechannel command line: generate, verify, classify, curvature, build, blend, export.
// Exit codes: 0 success / channel, 1 valid input but the property fails or the
// construction is impossible, 2 malformed input or invalid parameters.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "liechannel/io.hpp"

using namespace liechannel;
using io::json;

namespace {

LegendreNet load(const std::string& path) {
  try {
    return io::net_from_json(io::read_json_file(path));
  } catch (const GeometryError& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

std::vector<Label> directions(const std::string& d) {
  if (d == "+" || d == "plus") return {Label::Plus};
  if (d == "-" || d == "minus" || d == "−") return {Label::Minus};
  if (d == "both") return {Label::Plus, Label::Minus};
  throw io::FormatError("--direction must be +, - or both");
}

std::optional<ChannelCertificate> channel_certificate(const LegendreNet& net) {
  for (Label d : {Label::Plus, Label::Minus}) {
    auto r = verify_channel(net, d);
    if (r.ok()) return std::move(*r.certificate);
  }
  return std::nullopt;
}

std::vector<Vec3> points_of(const LegendreNet& net) {
  std::vector<Vec3> out;
  for (int v = 0; v < net.complex().vertex_count(); ++v) out.push_back(net.point(v));
  return out;
}

json vertex_summary(const std::vector<VertexTest>& t) {
  int n[4] = {0, 0, 0, 0};
  for (const auto& x : t) ++n[static_cast<int>(x.status)];
  return {{"pass", n[0]}, {"fail", n[1]}, {"not_applicable", n[2]}, {"spherical", n[3]}};
}

json direction_report(const LegendreNet& net, Label dir, const Tolerances& tol) {
  json j;
  const auto res = verify_channel(net, dir, tol);
  j["channel"] = res.ok();
  j["envelopes-spheres"] = res.ok() || res.failure->check == 'b';
  if (!res.ok())
    j["failure"] = {{"check", std::string(1, res.failure->check)},
                    {"index", res.failure->index},
                    {"value", res.failure->value},
                    {"message", res.failure->message}};
  bool circular = true;
  for (const auto& l : coordinate_lines(net.complex(), dir)) {
    std::vector<Vec3> pts;
    for (int v : l.vertices) pts.push_back(net.point(v));
    if (lift_rank_defect(pts, 3) > tol.rank) circular = false;
  }
  j["circular-lines"] = circular;
  j["multi-circular"] = is_multi_circular(net, dir, tol);
  if (res.ok()) {
    const auto& cert = *res.certificate;
    j["certificate"] = io::certificate_to_json(cert);
    try {
      const auto cr = cross_ratio_constancy(cert, net);
      j["cross-ratio"] = {{"spread", cr.spread}, {"quadruples", cr.quadruples}};
    } catch (const GeometryError& e) {
      j["cross-ratio"] = {{"error", e.what()}};
    }
  }
  return j;
}

int cmd_generate(const std::string& kind, int m, int n, double R, double r, std::uint64_t seed,
                 bool hexa, const std::string& out) {
  LegendreNet net;
  try {
    if (kind == "revolution") {
      const auto p = random_revolution_profile(seed, n);
      net = make_revolution(p.curve, p.normals, m);
    } else if (kind == "cylinder") {
      const auto p = random_cylinder_profile(seed, n);
      std::vector<double> off;
      for (int k = 0; k < m; ++k) off.push_back(0.6 * k);
      net = make_cylinder(p.curve, p.normals, off);
    } else if (kind == "cone") {
      const auto p = random_cone_profile(seed, n);
      std::vector<double> sc;
      for (int k = 0; k < m; ++k) sc.push_back(1.0 + 0.3 * k);
      net = make_cone(p.curve, p.normals, sc);
    } else if (kind == "dupin-torus") {
      net = make_dupin_torus(R, r, m, n);
    } else if (kind == "example1" || kind == "example2" || kind == "example3") {
      net = make_reflection_example(kind.back() - '0', seed);
    } else {
      throw io::FormatError("unknown generator " + kind);
    }
  } catch (const GeometryError& e) {
    throw io::FormatError(e.what());
  }
  io::write_json_file(out, io::net_to_json(net, hexa));
  std::cout << kind << ": " << net.complex().vertex_count() << " vertices, "
            << net.complex().faces().size() << " faces -> " << out << '\n';
  return 0;
}

int cmd_verify(const std::string& in, const std::string& dir, const std::string& report,
               const std::string& curve_out) {
  const auto tol = default_tolerances();
  const auto net = load(in);
  const auto dirs = directions(dir);
  json rep{{"legendre", true},
           {"vertices", net.complex().vertex_count()},
           {"faces", net.complex().faces().size()}};
  bool plus = false, minus = false, envelopes = false, circular = false;
  std::optional<ChannelCertificate> first_cert;
  for (Label d : dirs) {
    json j = direction_report(net, d, tol);
    const bool ok = j["channel"];
    (d == Label::Plus ? plus : minus) = ok;
    if (j["envelopes-spheres"]) {
      envelopes = true;
      circular = circular || j["circular-lines"].get<bool>();
    }
    if (ok && !first_cert) first_cert = *verify_channel(net, d, tol).certificate;
    rep["directions"][to_string(d)] = j;
  }
  rep["class"] = plus && minus ? "both-directions" : plus ? "+" : minus ? "-" : "none";
  rep["envelopes-spheres"] = envelopes;
  rep["circular-lines"] = circular;
  rep["dupin"] = is_dupin_cyclide(net, tol).ok;
  const auto pts = points_of(net);
  const auto diag = diagonal_concircular(pts, net.complex(), tol);
  const auto iso = is_isothermic_5point(pts, net.complex(), tol);
  const json ds = vertex_summary(diag), is = vertex_summary(iso);
  rep["diagonal-concircular"] = ds["fail"] == 0 && ds["pass"] > 0;
  rep["diagonal-concircular-vertices"] = ds;
  const int checked = is["pass"].get<int>() + is["fail"].get<int>() + is["spherical"].get<int>();
  rep["isothermic"] = checked == 0          ? "not-applicable"
                      : is["fail"] > 0      ? "no"
                      : is["spherical"] > 0 ? "inconclusive"
                                            : "yes";
  rep["isothermic-vertices"] = is;
  if (net.complex().grid()) rep["multi-circular-net"] = is_multi_circular_net(net, tol);

  if (!report.empty()) io::write_json_file(report, rep);
  if (!curve_out.empty()) {
    if (!first_cert) throw GeometryError("no channel direction: no sphere curve to extract");
    io::write_json_file(curve_out, io::sphere_curve_to_json(sphere_curve_from_certificate(*first_cert)));
  }
  std::cout << "class: " << rep["class"].get<std::string>()
            << "\nenvelopes-spheres: " << (envelopes ? "true" : "false")
            << "\ncircular-lines: " << (circular ? "true" : "false")
            << "\ndiagonal-concircular: " << (rep["diagonal-concircular"].get<bool>() ? "true" : "false")
            << "\nisothermic: " << rep["isothermic"].get<std::string>() << '\n';
  for (const auto& [d, j] : rep["directions"].items())
    if (j.contains("failure"))
      std::cout << d << ": " << j["failure"]["message"].get<std::string>() << '\n';
  return plus || minus ? 0 : 1;
}

int cmd_classify(const std::string& in) {
  const auto net = load(in);
  const auto cert = channel_certificate(net);
  if (!cert) {
    std::cout << "none (not a channel net)\n";
    return 1;
  }
  const auto vc = vessiot_classify(*cert);
  std::cout << to_string(vc.type) << '\n';
  return 0;
}

int cmd_curvature(const std::string& in, const std::string& report) {
  const auto net = load(in);
  const auto rep = principal_curvatures(net);
  json j = io::curvature_to_json(rep);
  if (const auto cert = channel_certificate(net); cert && cert->direction == Label::Plus) {
    const auto cmc = ribbon_cmc_analysis(net, *cert, rep);
    json rs = json::array();
    for (const auto& r : cmc.ribbons)
      rs.push_back({{"residuals", r.residuals},
                    {"coinciding", r.coinciding},
                    {"rungs", r.rungs},
                    {"torus_type", r.torus_type}});
    j["cmc"] = {{"h_spread", cmc.h_spread}, {"constant_h", cmc.constant_h}, {"ribbons", rs}};
  }
  if (!report.empty()) io::write_json_file(report, j);
  std::cout << "faces: " << rep.faces.size() << "\nmax face residual: " << rep.max_face_residual
            << "\nmax edge residual: " << rep.max_edge_residual
            << "\nmax identity residual: " << rep.max_identity_residual << '\n';
  return 0;
}

int cmd_build(const std::string& spheres, int samples, double phase, const std::string& out) {
  const auto sc = io::sphere_curve_from_json(io::read_json_file(spheres));
  const auto rep = validate_sphere_curve(sc);
  if (!rep.ok()) {
    for (const auto& i : rep.issues) std::cerr << i.kind << ' ' << i.index << ": " << i.message << '\n';
    return 1;
  }
  BuildOptions opt;
  opt.samples = samples;
  opt.phase = phase;
  const auto res = channel_from_sphere_curve(sc, opt);
  io::write_json_file(out, io::net_to_json(res.net));
  std::cout << "built " << res.net.complex().vertex_count() << " vertices, max discriminant "
            << res.max_discriminant << ", monodromy " << res.monodromy << " -> " << out << '\n';
  return 0;
}

ContactElement parse_contact(const std::string& s) {
  std::ifstream f(s);
  if (f) return io::contact_from_json(io::read_json_file(s));
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw io::FormatError("--contact: expected a file or x,y,z,nx,ny,nz");
    }
  }
  if (v.size() != 6) throw io::FormatError("--contact: expected a file or x,y,z,nx,ny,nz");
  const Vec3 n(v[3], v[4], v[5]);
  if (n.norm() < 1e-12) throw io::FormatError("--contact: zero normal");
  return contact_from_point_normal({v[0], v[1], v[2]}, n.normalized());
}

int cmd_blend(const std::string& c1, const std::string& c2, const std::string& contact, double t0,
              int samples, const std::string& out) {
  const auto a = io::curve_from_json(io::read_json_file(c1));
  const auto b = io::curve_from_json(io::read_json_file(c2));
  const auto f0 = parse_contact(contact);
  const auto res = blend_channel(a, b, f0, t0, samples);
  io::write_json_file(out, io::net_to_json(res.net));
  std::cout << "blended " << res.net.complex().vertex_count() << " vertices, continuation residual "
            << res.max_continuation_residual << " -> " << out << '\n';
  return 0;
}

int cmd_export(const std::string& in, const std::string& obj, bool circles) {
  const auto net = load(in);
  std::optional<ChannelCertificate> cert;
  if (circles) {
    cert = channel_certificate(net);
    if (!cert) throw GeometryError("--circles needs a channel net");
  }
  std::ofstream out(obj);
  if (!out) throw io::FormatError("cannot write " + obj);
  io::write_obj(out, net, cert ? &*cert : nullptr);
  std::cout << "wrote " << net.complex().vertex_count() << " vertices -> " << obj << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete channel surfaces in Lie sphere geometry"};
  app.require_subcommand(1);
  int code = 0;
  auto run = [&](auto f) { return [&code, f] { code = f(); }; };

  std::string kind, out, in, report, dir = "both", curve_out, spheres, obj, c1, c2, contact;
  int m = 8, n = 8, samples = 16, blend_samples = 8;
  double R = 2, r = 1, phase = 0, t0 = 0;
  std::uint64_t seed = 1;
  bool hexa = false, circles = false;

  auto* gen = app.add_subcommand("generate", "write a generated net");
  gen->add_option("kind", kind, "revolution|cylinder|cone|dupin-torus|example1|example2|example3")
      ->required();
  gen->add_option("--m", m, "'+' count (rotations, offsets, scales, torus u)");
  gen->add_option("--n", n, "'-' count (profile points, torus v)");
  gen->add_option("--R", R);
  gen->add_option("--r", r);
  gen->add_option("--seed", seed);
  gen->add_flag("--hexaspherical", hexa, "write contact elements as 6-vectors");
  gen->add_option("--out", out)->required();
  gen->callback(run([&] { return cmd_generate(kind, m, n, R, r, seed, hexa, out); }));

  auto* ver = app.add_subcommand("verify", "check Legendre and channel properties");
  ver->add_option("--in", in)->required();
  ver->add_option("--direction", dir, "+, - or both");
  ver->add_option("--report", report);
  ver->add_option("--sphere-curve", curve_out, "write the enveloped spheres and face-spheres");
  ver->callback(run([&] { return cmd_verify(in, dir, report, curve_out); }));

  auto* cls = app.add_subcommand("classify", "revolution, cylinder, cone or none");
  cls->add_option("--in", in)->required();
  cls->callback(run([&] { return cmd_classify(in); }));

  auto* cur = app.add_subcommand("curvature", "mixed-area and edge curvatures");
  cur->add_option("--in", in)->required();
  cur->add_option("--report", report);
  cur->callback(run([&] { return cmd_curvature(in, report); }));

  auto* bld = app.add_subcommand("build", "channel net from a sphere curve");
  bld->add_option("--spheres", spheres)->required();
  bld->add_option("--samples", samples);
  bld->add_option("--phase", phase);
  bld->add_option("--out", out)->required();
  bld->callback(run([&] { return cmd_build(spheres, samples, phase, out); }));

  auto* bl = app.add_subcommand("blend", "channel net through two curves");
  bl->add_option("--c1", c1)->required();
  bl->add_option("--c2", c2)->required();
  bl->add_option("--contact", contact, "file or x,y,z,nx,ny,nz at the first vertex of c1")->required();
  bl->add_option("--t0", t0);
  bl->add_option("--samples", blend_samples);
  bl->add_option("--out", out)->required();
  bl->callback(run([&] { return cmd_blend(c1, c2, contact, t0, blend_samples, out); }));

  auto* ex = app.add_subcommand("export", "OBJ mesh");
  ex->add_option("--in", in)->required();
  ex->add_option("--obj", obj)->required();
  ex->add_flag("--circles", circles, "add generating circles as polylines");
  ex->callback(run([&] { return cmd_export(in, obj, circles); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}
