// Acceptance runner: one PASS/FAIL line per criterion, exit code = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "cli_support.hpp"
#include "liechannel/io.hpp"

using namespace liechannel;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// collects failures with the first few reasons
struct Tally {
  int checks = 0, failed = 0;
  std::vector<std::string> reasons;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failed;
    if (reasons.size() < 4) reasons.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << "; " << checks - failed << "/" << checks << " checks";
    for (const auto& r : reasons) out << "; " << r;
    return {failed == 0, out.str()};
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::vector<Vec3> points_of(const LegendreNet& net) {
  std::vector<Vec3> out;
  for (int v = 0; v < net.complex().vertex_count(); ++v) out.push_back(net.point(v));
  return out;
}

int count(const std::vector<VertexTest>& t, IsoStatus s) {
  int k = 0;
  for (const auto& x : t) k += x.status == s;
  return k;
}

// random instances of the three rotational families
LegendreNet revolution(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int m = std::uniform_int_distribution<int>(8, 12)(rng);
  const auto p = random_revolution_profile(seed, 8);
  return make_revolution(p.curve, p.normals, m);
}
LegendreNet cylinder(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(0.3, 1.0);
  std::vector<double> off{0.0};
  while (off.size() < 8) off.push_back(off.back() + step(rng));
  const auto p = random_cylinder_profile(seed, 8);
  return make_cylinder(p.curve, p.normals, off);
}
LegendreNet cone(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(0.1, 0.4);
  std::vector<double> sc{1.0};
  while (sc.size() < 8) sc.push_back(sc.back() + step(rng));
  const auto p = random_cone_profile(seed, 8);
  return make_cone(p.curve, p.normals, sc);
}

DiscreteCurve3D meridian(const LegendreNet& net, int a, int rows) {
  const auto& g = *net.complex().grid();
  DiscreteCurve3D c;
  for (int b = 0; b < rows; ++b) c.points.push_back(net.point(g.vertex(a, b)));
  return c;
}

LieVec unit_mobius(LieVec v) {
  v -= inner(v, basis::e6()) / inner(basis::e6(), basis::e6()) * basis::e6();
  return v / std::sqrt(inner(v, v));
}

// Sphere curve without symmetry: s_{j+1} keeps (s, sigma_j) and drifts off
// randomly; sigma_{j+1} is sigma_j mirrored in s_{j+1}, then turned a little
// inside their pencil.
SphereCurve generic_sphere_curve(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  SphereCurve sc;
  sc.s.push_back(mobius_sphere({0, 0, 0}, 1.0));
  LieVec sigma = mobius_sphere({0.1, -0.05, 0.7}, 0.9);
  for (int j = 0; j + 1 < n; ++j) {
    sc.sigma.push_back(sigma);
    const LieVec& s = sc.s.back();
    const double c = inner(s, sigma);
    LieVec w = s - c * sigma;
    LieVec d = mobius_sphere({0.2 * g(rng), 0.2 * g(rng), 0.2 * g(rng)}, 1.0 + 0.1 * g(rng)) - s;
    d -= inner(d, sigma) * sigma;
    w += 0.15 * d;
    w -= inner(w, sigma) * sigma;
    w *= std::sqrt((1 - c * c) / inner(w, w));
    const LieVec next = c * sigma + w;
    sc.s.push_back(next);
    LieVec mirrored = sigma - 2 * inner(sigma, next) * next;
    const double a = 0.1 * g(rng);
    sigma = unit_mobius(mirrored + a * (next - inner(next, mirrored) * mirrored));
  }
  return sc;
}

// ---------------------------------------------------------------------------

Outcome lift_contact() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::uniform_real_distribution<double> R(0.2, 2.0);
  Tally t;
  int contacts = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 c1(U(rng), U(rng), U(rng));
    const double r1 = R(rng) * (U(rng) < 0 ? -1 : 1);
    double r2 = R(rng) * (U(rng) < 0 ? -1 : 1);
    Vec3 c2;
    const Vec3 dir = Vec3(U(rng), U(rng), U(rng)).normalized();
    switch (i % 3) {
      case 0:  // tangent
        c2 = c1 + std::abs(r1 - r2) * dir;
        break;
      case 1:  // near miss, |dc|^2 - dr^2 = 1e-6 or -1e-6 when possible
        c2 = c1 + std::sqrt(std::max(0.0, (r1 - r2) * (r1 - r2) + (i % 2 ? 1e-6 : -1e-6))) * dir;
        break;
      default:
        c2 = Vec3(U(rng), U(rng), U(rng));
    }
    // Euclidean oracle
    const double dc2 = (c1 - c2).squaredNorm(), dr2 = (r1 - r2) * (r1 - r2);
    const bool euclid = std::abs(dc2 - dr2) <= 1e-9 * std::max(1.0, dc2 + dr2);
    const bool lie = in_oriented_contact(lift_sphere(c1, r1), lift_sphere(c2, r2));
    contacts += euclid;
    t.expect(euclid == lie, "pair " + std::to_string(i) + " disagrees");
  }
  return t.outcome(std::to_string(contacts) + " contact pairs of 1000");
}

Outcome dupin_torus(const std::filesystem::path& dir) {
  Tally t;
  const auto file = (dir / "torus.json").string();
  const int rc = clitest::run("generate dupin-torus --R 2 --r 1 --m 16 --n 16 --out " + clitest::shell_quote(file),
                              (dir / "log").string());
  t.expect(rc == 0, "generate exit " + std::to_string(rc));
  const auto net = io::net_from_json(io::read_json_file(file));
  double spread = 0.0, confined = 0.0;
  for (Label d : {Label::Plus, Label::Minus}) {
    const auto r = verify_channel(net, d);
    t.expect(r.ok(), "verify_channel fails");
    if (!r.ok()) continue;
    for (const auto& rb : r.certificate->ribbons)
      spread = std::max(spread, cyclide_distance(rb.cyclide, r.certificate->ribbons[0].cyclide));
  }
  const auto dc = is_dupin_cyclide(net);
  t.expect(dc.ok, "not a Dupin cyclide: " + dc.message);
  if (dc.ok) {
    t.expect(dupin_defect(dc.cyclide).empty(), "splitting defect");
    t.expect(signature(dc.cyclide.plus).is(2, 1) && signature(dc.cyclide.minus).is(2, 1), "signatures");
    for (std::size_t e = 0; e < net.complex().edges().size(); ++e) {
      const auto& part = net.complex().edges()[e].label == Label::Plus ? dc.cyclide.plus : dc.cyclide.minus;
      confined = std::max(confined, part.residual(net.sphere(static_cast<int>(e))));
    }
  }
  t.expect(spread <= 1e-8, "cyclide spread " + num(spread));
  t.expect(confined <= 1e-8, "sphere off its plane " + num(confined));
  return t.outcome("cyclide spread " + num(spread) + ", sphere confinement " + num(confined));
}

Outcome certificates() {
  Tally t;
  double env = 0.0, mis = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const auto& net : {revolution(seed), cylinder(seed), cone(seed)}) {
      const auto r = verify_channel(net, Label::Plus);
      t.expect(r.ok(), "seed " + std::to_string(seed) + " not channel");
      if (!r.ok()) continue;
      t.expect(r.certificate->derived_ok(), r.certificate->derived_error);
      for (const auto& l : r.certificate->lines) {
        // every contact element on the line contains the line's sphere
        for (int v : l.line.vertices)
          env = std::max(env, net.element(v).plane().residual(l.sphere));
        env = std::max(env, l.envelope_residual);
        mis = std::max(mis, l.circle_mismatch);
      }
    }
  }
  t.expect(env <= 1e-8, "enveloping residual " + num(env));
  t.expect(mis <= 1e-8, "circle mismatch " + num(mis));
  return t.outcome("15 nets, enveloping " + num(env) + ", circle mismatch " + num(mis));
}

Outcome counterexamples() {
  Tally t;
  const auto e3 = make_reflection_example(3);
  const auto r3 = verify_channel(e3, Label::Plus);
  t.expect(!r3.ok() && r3.failure->check == 'a', "example3 does not fail at the constancy check");

  const auto e2 = make_reflection_example(2);
  const auto r2 = verify_channel(e2, Label::Plus);
  const auto dc = diagonal_concircular(points_of(e2), e2.complex());
  const int dfail = count(dc, IsoStatus::fail);
  t.expect(r2.ok(), "example2 fails verify_channel (check " +
                        std::string(1, r2.failure ? r2.failure->check : '?') + ": " +
                        (r2.failure ? r2.failure->message : std::string()) + ")");
  t.expect(dfail > 0, "example2 passes diagonal_concircular");
  std::ostringstream s;
  s << "example3 fails check " << (r3.failure ? r3.failure->check : '-') << "; example2 "
    << (r2.ok() ? "passes" : "fails") << " verify_channel, diagonal_concircular fails at " << dfail
    << " vertices";
  return t.outcome(s.str());
}

Outcome cross_ratios() {
  Tally t;
  std::vector<std::pair<std::string, LegendreNet>> nets;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    nets.emplace_back("revolution", revolution(seed));
    nets.emplace_back("cylinder", cylinder(seed));
    nets.emplace_back("cone", cone(seed));
  }
  nets.emplace_back("torus", make_dupin_torus(2, 1, 16, 16));
  const auto torus = make_dupin_torus(2.5, 1, 12, 16);
  nets.emplace_back("blend", blend_channel(meridian(torus, 0, 6), meridian(torus, 1, 6),
                                           contact_from_point_normal(torus.point(0), Vec3(0.3, -0.5, 0.8).normalized()),
                                           0.7, 9)
                                 .net);
  double worst = 0.0;
  int quads = 0;
  for (const auto& [name, net] : nets) {
    for (Label d : {Label::Plus, Label::Minus}) {
      const auto r = verify_channel(net, d);
      if (!r.ok()) {
        t.expect(d == Label::Minus, name + " not channel");
        continue;
      }
      const auto cr = cross_ratio_constancy(*r.certificate, net);
      worst = std::max(worst, cr.spread);
      quads += cr.quadruples;
      t.expect(cr.spread <= 1e-8, name + " spread " + num(cr.spread));
    }
  }
  return t.outcome(std::to_string(quads) + " quadruples, max spread " + num(worst));
}

Outcome sphere_curve_round_trip() {
  Tally t;
  double cyc = 0.0, fs = 0.0, disc = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = random_revolution_profile(seed, 8);
    const auto net = make_revolution(p.curve, p.normals, 10);
    const auto r = verify_channel(net, Label::Plus);
    t.expect(r.ok(), "source not channel");
    if (!r.ok()) continue;
    const auto sc = sphere_curve_from_certificate(*r.certificate);
    BuildOptions opt;
    for (int v : r.certificate->lines[0].line.vertices) opt.initial_points.push_back(net.point(v));
    const auto built = channel_from_sphere_curve(sc, opt);
    disc = std::max(disc, built.max_discriminant);
    const auto rb = verify_channel(built.net, Label::Plus);
    t.expect(rb.ok(), "rebuilt net not channel");
    if (!rb.ok()) continue;
    const auto& a = r.certificate->ribbons;
    const auto& b = rb.certificate->ribbons;
    t.expect(a.size() == b.size(), "ribbon count");
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      cyc = std::max(cyc, cyclide_distance(a[i].cyclide, b[i].cyclide));
      fs = std::max(fs, projective_distance(a[i].face_sphere, b[i].face_sphere));
    }
  }
  t.expect(cyc <= 1e-7, "cyclides " + num(cyc));
  t.expect(fs <= 1e-7, "face-spheres " + num(fs));
  t.expect(disc <= 1e-7, "discriminant " + num(disc));
  return t.outcome("cyclides " + num(cyc) + ", face-spheres " + num(fs) + ", discriminant " + num(disc));
}

Outcome blend_freedom() {
  Tally t;
  const auto torus = make_dupin_torus(2.5, 1, 12, 16);
  const auto c1 = meridian(torus, 0, 6), c2 = meridian(torus, 1, 6);
  t.expect(is_ribaucour_pair(c1, c2), "meridians not a Ribaucour pair");
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> U(-pi / 2, pi / 2);
  double off = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f0 = contact_from_point_normal(c1.points[0], Vec3(g(rng), g(rng), g(rng)).normalized());
    const auto res = blend_channel(c1, c2, f0, U(rng), 9);
    t.expect(verify_channel(res.net, Label::Plus).ok(), "blend " + std::to_string(trial) + " not channel");
    const auto& gs = *res.net.complex().grid();
    for (int b = 0; b < 6; ++b) {
      off = std::max(off, (res.net.point(gs.vertex(0, b)) - c1.points[b]).norm());
      off = std::max(off, (res.net.point(gs.vertex(1, b)) - c2.points[b]).norm());
    }
  }
  t.expect(off <= 1e-8, "input curves off by " + num(off));

  // two parallel lines: the circular cylinder through both is one member
  const double h = 0.4, z0 = 0.7, rho = std::sqrt(0.25 + z0 * z0);
  DiscreteCurve3D l1, l2;
  for (int b = 0; b < 5; ++b) {
    l1.points.emplace_back(b * h, 0, 0);
    l2.points.emplace_back(b * h, 1, 0);
  }
  const Vec3 axis(0, 0.5, z0);
  const auto f0 = contact_from_point_normal({0, 0, 0}, -axis.normalized());
  const auto fam = blend_first_family(l1, l2, f0);
  std::vector<LieVec> ring;
  for (double x : {0.0, 1.0, 2.0}) ring.push_back(lift_sphere({x, 0.5, z0}, -rho));
  const auto [t0, fit] = fam.parameter_of(Subspace::span(ring));
  auto off_cylinder = [&](const LegendreNet& net) {
    double w = 0.0;
    for (int v = 0; v < net.complex().vertex_count(); ++v) {
      const Vec3 x = net.point(v);
      w = std::max(w, std::abs(std::hypot(x.y() - 0.5, x.z() - z0) - rho));
    }
    return w;
  };
  const auto cyl = blend_channel(l1, l2, f0, t0, 10);
  const auto other = blend_channel(l1, l2, f0, t0 + 0.4, 10);
  const double dc = off_cylinder(cyl.net), dn = off_cylinder(other.net);
  t.expect(fit <= 1e-9 && dc <= 1e-9, "cylindrical member off by " + num(dc));
  t.expect(verify_channel(other.net, Label::Plus).ok() && dn > 1e-3, "second member");
  return t.outcome("5 torus blends, curves kept to " + num(off) + "; lines: cylinder off " + num(dc) +
                   ", other member off " + num(dn));
}

Outcome vessiot() {
  Tally t;
  int mis = 0;
  auto iso_ok = [](const LegendreNet& net) {
    const auto iso = is_isothermic_5point(points_of(net), net.complex());
    return count(iso, IsoStatus::fail) == 0 && count(iso, IsoStatus::pass) > 0;
  };
  int agree = 0, total = 0;
  auto agreement = [&](const LegendreNet& net, const std::string& name) {
    ++total;
    const bool ok = is_multi_circular_net(net) == iso_ok(net);
    agree += ok;
    t.expect(ok, name + ": multi-circular and isothermic disagree");
  };
  const std::array<std::pair<VessiotType, std::function<LegendreNet(std::uint64_t)>>, 3> fams{
      {{VessiotType::revolution, revolution}, {VessiotType::cylinder, cylinder}, {VessiotType::cone, cone}}};
  for (const auto& [type, make] : fams) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      const auto net = make(seed);
      const auto r = verify_channel(net, Label::Plus);
      const std::string name = to_string(type) + " " + std::to_string(seed);
      if (!r.ok()) {
        ++mis;
        t.expect(false, name + " not channel");
        continue;
      }
      const auto vc = vessiot_classify(*r.certificate);
      mis += vc.type != type;
      t.expect(vc.type == type, name + " classified " + to_string(vc.type));
      t.expect(iso_ok(net), name + " fails the 5-point test");
      agreement(net, name);
    }
  }
  const auto sc = generic_sphere_curve(5, 7);
  const auto rep = validate_sphere_curve(sc);
  t.expect(rep.ok(), "generic sphere curve invalid");
  BuildOptions opt;
  opt.samples = 10;
  const auto built = channel_from_sphere_curve(sc, opt);
  const auto gr = verify_channel(built.net, Label::Plus);
  t.expect(gr.ok(), "generic net not channel");
  if (gr.ok()) t.expect(vessiot_classify(*gr.certificate).type == VessiotType::none, "generic net classified");
  const auto iso = is_isothermic_5point(points_of(built.net), built.net.complex());
  const int gfail = count(iso, IsoStatus::fail);
  t.expect(gfail > 0, "generic net passes the 5-point test");
  agreement(built.net, "generic");
  return t.outcome(std::to_string(mis) + " misclassified of 60; generic net fails 5-point at " +
                   std::to_string(gfail) + " vertices; agreement " + std::to_string(agree) + "/" +
                   std::to_string(total));
}

Outcome curvature() {
  Tally t;
  double flat = 0.0, ident = 0.0, printed = 0.0, spread = 0.0, cmc = 0.0;
  int coinciding = 0, rungs = 0;
  std::vector<LegendreNet> nets;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    nets.push_back(revolution(seed));
    nets.push_back(cylinder(seed));
    nets.push_back(cone(seed));
  }
  nets.push_back(make_dupin_torus(3, 1, 10, 12));
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto& net = nets[i];
    const auto rep = principal_curvatures(net);
    ident = std::max(ident, rep.max_identity_residual);
    for (const auto& f : rep.faces) printed = std::max(printed, f.printed_identity_residual);
    if (i % 3 == 1 && i < 12)
      for (const auto& f : rep.faces) flat = std::max(flat, std::abs(f.K));
    const auto r = verify_channel(net, Label::Plus);
    t.expect(r.ok(), "net not channel");
    if (!r.ok()) continue;
    for (const auto& l : r.certificate->lines) {
      double lo = 1e300, hi = -1e300;
      for (int e : l.line.edges) {
        lo = std::min(lo, rep.edges[e].kappa);
        hi = std::max(hi, rep.edges[e].kappa);
      }
      spread = std::max(spread, hi - lo);
    }
    if (i % 3 == 0 && i < 12) {
      const auto a = ribbon_cmc_analysis(net, *r.certificate, rep);
      for (const auto& rb : a.ribbons) {
        coinciding += rb.coinciding;
        rungs += rb.rungs;
        for (double x : rb.residuals) cmc = std::max(cmc, std::abs(x));
      }
    }
  }
  t.expect(flat <= 1e-8, "cylinder K " + num(flat));
  t.expect(ident <= 1e-7, "kappa identity " + num(ident));
  t.expect(spread <= 1e-9, "kappa spread " + num(spread));
  t.expect(cmc <= 1e-8, "cmc residual " + num(cmc));
  t.expect(coinciding == rungs, "coinciding " + std::to_string(coinciding) + " of " + std::to_string(rungs));
  return t.outcome("cylinder |K| " + num(flat) + ", kappa identity " + num(ident) + " (other sign " +
                   num(printed) + "), kappa spread " + num(spread) + ", cmc " + num(cmc) + ", coinciding " +
                   std::to_string(coinciding) + "/" + std::to_string(rungs));
}

Outcome cli(const std::filesystem::path& dir) {
  Tally t;
  const clitest::Schema schema;
  const auto log = (dir / "log").string();
  auto f = [&](const std::string& name) { return clitest::shell_quote((dir / name).string()); };
  auto doc = [&](const std::string& name) { return clitest::load(dir / name); };
  auto step = [&](const std::string& args, int want) {
    const int rc = clitest::run(args, log);
    t.expect(rc == want, args.substr(0, args.find(' ')) + " exit " + std::to_string(rc));
  };
  auto conform = [&](const std::string& name, const std::string& def) {
    const auto e = schema.check(doc(name), def);
    t.expect(e.empty(), name + ": " + e);
  };

  step("generate dupin-torus --R 2 --r 1 --m 16 --n 16 --out " + f("t.json"), 0);
  conform("t.json", "net");
  step("verify --in " + f("t.json") + " --report " + f("r.json"), 0);
  conform("r.json", "verify_report");
  t.expect(doc("r.json")["class"] == "both-directions", "class");
  const int rc = clitest::run("classify --in " + f("t.json"), (dir / "classify").string());
  t.expect(rc == 0 && clitest::slurp(dir / "classify") == "revolution\n", "classify");
  step("curvature --in " + f("t.json") + " --report " + f("c.json"), 0);
  conform("c.json", "curvature_report");
  step("export --in " + f("t.json") + " --obj " + f("t.obj"), 0);
  const int nv = clitest::count_prefix(clitest::slurp(dir / "t.obj"), "v ");
  t.expect(nv == 256, "OBJ has " + std::to_string(nv) + " vertices");

  step("generate revolution --seed 4 --out " + f("rv.json"), 0);
  step("verify --in " + f("rv.json") + " --sphere-curve " + f("s.json"), 0);
  conform("s.json", "sphere_curve");
  step("build --spheres " + f("s.json") + " --samples 12 --out " + f("b.json"), 0);
  step("verify --in " + f("b.json"), 0);
  step("export --in " + f("b.json") + " --obj " + f("b.obj") + " --circles", 0);

  step("generate example3 --out " + f("e3.json"), 0);
  step("verify --in " + f("e3.json"), 1);
  step("generate revolution --m 2 --out " + f("x.json"), 2);
  std::ofstream(dir / "trunc.json") << clitest::slurp(dir / "t.json").substr(0, 500);
  step("verify --in " + f("trunc.json"), 2);
  return t.outcome("pipeline and error exits, OBJ vertices " + std::to_string(nv));
}

}  // namespace

int main() {
  const auto dir = clitest::scratch_dir("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lift/contact identity", lift_contact},
      {"Dupin cyclide", [&] { return dupin_torus(dir); }},
      {"channel certificates", certificates},
      {"counterexamples", counterexamples},
      {"cross-ratio constancy", cross_ratios},
      {"sphere-curve round trip", sphere_curve_round_trip},
      {"blend freedom", blend_freedom},
      {"Vessiot classes and isothermicity", vessiot},
      {"curvature", curvature},
      {"CLI end-to-end", [&] { return cli(dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %2zu %s  %-34s %5.2fs  %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
