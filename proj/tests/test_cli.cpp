#include <fstream>

#include "cli_support.hpp"
#include "doctest.h"
#include "liechannel/io.hpp"

using namespace liechannel;
using clitest::count_prefix;
using clitest::json;
using clitest::run;

namespace {

struct Dir {
  std::filesystem::path path;
  explicit Dir(const std::string& name) : path(clitest::scratch_dir(name)) {}
  std::string operator()(const std::string& f) const { return clitest::shell_quote((path / f).string()); }
  std::string raw(const std::string& f) const { return (path / f).string(); }
};

const clitest::Schema& schema() {
  static const clitest::Schema s;
  return s;
}

void check_schema(const Dir& d, const std::string& file, const std::string& def) {
  INFO(file);
  CHECK(schema().check(clitest::load(d.raw(file)), def) == "");
}

}  // namespace

TEST_CASE("torus pipeline") {
  Dir d("cli_torus");
  const auto log = d.raw("log");
  REQUIRE(run("generate dupin-torus --R 2 --r 1 --m 16 --n 16 --out " + d("t.json"), log) == 0);
  check_schema(d, "t.json", "net");

  REQUIRE(run("verify --in " + d("t.json") + " --report " + d("r.json"), log) == 0);
  check_schema(d, "r.json", "verify_report");
  const json r = clitest::load(d.raw("r.json"));
  CHECK(r["class"] == "both-directions");
  CHECK(r["dupin"] == true);
  CHECK(r["directions"]["+"]["channel"] == true);
  CHECK(r["directions"]["-"]["channel"] == true);

  REQUIRE(run("classify --in " + d("t.json"), d.raw("classify.log")) == 0);
  CHECK(clitest::slurp(d.raw("classify.log")) == "revolution\n");

  REQUIRE(run("curvature --in " + d("t.json") + " --report " + d("c.json"), log) == 0);
  check_schema(d, "c.json", "curvature_report");
  CHECK(clitest::load(d.raw("c.json"))["faces"].size() == 256);

  REQUIRE(run("export --in " + d("t.json") + " --obj " + d("t.obj"), log) == 0);
  const auto obj = clitest::slurp(d.raw("t.obj"));
  CHECK(count_prefix(obj, "v ") == 256);
  CHECK(count_prefix(obj, "f ") == 256);

  REQUIRE(run("export --in " + d("t.json") + " --obj " + d("c.obj") + " --circles", log) == 0);
  const auto cobj = clitest::slurp(d.raw("c.obj"));
  CHECK(count_prefix(cobj, "v ") == 256 + 16 * 96);
  CHECK(count_prefix(cobj, "l ") == 16);
}

TEST_CASE("generate kinds") {
  Dir d("cli_generate");
  const auto log = d.raw("log");
  for (std::string kind : {"revolution", "cylinder", "cone", "dupin-torus", "example1", "example2", "example3"}) {
    INFO(kind);
    CHECK(run("generate " + kind + " --out " + d(kind + ".json"), log) == 0);
    check_schema(d, kind + ".json", "net");
  }
  REQUIRE(run("generate cone --hexaspherical --out " + d("hexa.json"), log) == 0);
  check_schema(d, "hexa.json", "net");
  CHECK(clitest::load(d.raw("hexa.json"))["vertices"][0].contains("contact"));
  CHECK(run("verify --in " + d("hexa.json"), log) == 0);

  CHECK(run("generate revolution --m 2 --out " + d("x.json"), log) == 2);
  CHECK(run("generate dupin-torus --R 1 --r 2 --out " + d("x.json"), log) == 2);
  CHECK(run("generate sphere --out " + d("x.json"), log) == 2);
  CHECK(run("generate revolution", log) == 2);
  CHECK(run("frobnicate", log) == 2);
}

TEST_CASE("verify exit codes") {
  Dir d("cli_verify");
  const auto log = d.raw("log");
  for (std::string kind : {"cylinder", "cone", "example1", "example2", "example3"})
    REQUIRE(run("generate " + kind + " --out " + d(kind + ".json"), log) == 0);

  CHECK(run("verify --in " + d("cylinder.json") + " --direction +", log) == 0);
  CHECK(run("verify --in " + d("cone.json") + " --direction - --report " + d("cone_r.json"), log) == 1);
  check_schema(d, "cone_r.json", "verify_report");
  CHECK(clitest::load(d.raw("cone_r.json"))["directions"].contains("+") == false);
  CHECK(run("verify --in " + d("cone.json") + " --direction sideways", log) == 2);

  CHECK(run("verify --in " + d("example1.json"), log) == 0);

  CHECK(run("verify --in " + d("example3.json") + " --report " + d("e3.json"), log) == 1);
  check_schema(d, "e3.json", "verify_report");
  const json e3 = clitest::load(d.raw("e3.json"));
  CHECK(e3["envelopes-spheres"] == false);
  CHECK(e3["directions"]["+"]["failure"]["check"] == "a");

  // envelopes its spheres but the lines are not circles, so not channel
  CHECK(run("verify --in " + d("example2.json") + " --report " + d("e2.json"), log) == 1);
  check_schema(d, "e2.json", "verify_report");
  const json e2 = clitest::load(d.raw("e2.json"));
  CHECK(e2["envelopes-spheres"] == true);
  CHECK(e2["circular-lines"] == false);
  CHECK(e2["diagonal-concircular"] == false);
}

TEST_CASE("malformed input exits 2") {
  Dir d("cli_malformed");
  const auto log = d.raw("log");
  REQUIRE(run("generate revolution --out " + d("n.json"), log) == 0);
  const auto text = clitest::slurp(d.raw("n.json"));
  std::ofstream(d.raw("trunc.json")) << text.substr(0, text.size() / 2);
  CHECK(run("verify --in " + d("trunc.json"), log) == 2);
  CHECK(run("classify --in " + d("trunc.json"), log) == 2);
  CHECK(run("curvature --in " + d("trunc.json"), log) == 2);
  CHECK(run("export --in " + d("trunc.json") + " --obj " + d("x.obj"), log) == 2);
  CHECK(run("verify --in " + d("missing.json"), log) == 2);

  json doc = clitest::load(d.raw("n.json"));
  doc["vertices"][0]["normal"] = {0.0, 0.6, 0.8};
  std::ofstream(d.raw("bent.json")) << doc.dump();
  CHECK(run("verify --in " + d("bent.json"), log) == 2);
}

TEST_CASE("sphere curve, build then verify") {
  Dir d("cli_build");
  const auto log = d.raw("log");
  REQUIRE(run("generate revolution --m 8 --n 8 --seed 3 --out " + d("r.json"), log) == 0);
  REQUIRE(run("verify --in " + d("r.json") + " --sphere-curve " + d("s.json"), log) == 0);
  check_schema(d, "s.json", "sphere_curve");

  REQUIRE(run("build --spheres " + d("s.json") + " --samples 9 --phase 0.3 --out " + d("b.json"), log) == 0);
  check_schema(d, "b.json", "net");
  CHECK(run("verify --in " + d("b.json") + " --report " + d("br.json"), log) == 0);
  CHECK(clitest::load(d.raw("br.json"))["directions"]["+"]["channel"] == true);
  REQUIRE(run("classify --in " + d("b.json"), d.raw("classify.log")) == 0);
  CHECK(clitest::slurp(d.raw("classify.log")) == "revolution\n");

  CHECK(run("build --spheres " + d("s.json") + " --samples 2 --out " + d("x.json"), log) != 0);
  json bad = clitest::load(d.raw("s.json"));
  bad["vertex_spheres"][2]["radius"] = bad["vertex_spheres"][2]["radius"].get<double>() * 1.01;
  std::ofstream(d.raw("bad.json")) << bad.dump();
  CHECK(run("build --spheres " + d("bad.json") + " --out " + d("x.json"), log) == 1);
  CHECK(run("build --spheres " + d("r.json") + " --out " + d("x.json"), log) == 2);
}

TEST_CASE("blend two torus meridians") {
  Dir d("cli_blend");
  const auto log = d.raw("log");
  const auto torus = make_dupin_torus(2.5, 1, 12, 16);
  const auto& g = *torus.complex().grid();
  DiscreteCurve3D c1, c2, far;
  for (int b = 0; b < 7; ++b) {
    c1.points.push_back(torus.point(g.vertex(0, b)));
    c2.points.push_back(torus.point(g.vertex(1, b)));
    far.points.push_back(torus.point(g.vertex(1, b)) + Vec3(0, 0, 0.05 * b * b));
  }
  io::write_json_file(d.raw("c1.json"), io::curve_to_json(c1));
  io::write_json_file(d.raw("c2.json"), io::curve_to_json(c2));
  io::write_json_file(d.raw("far.json"), io::curve_to_json(far));
  check_schema(d, "c1.json", "curve");

  const Vec3 x = c1.points[0];
  const std::string contact = std::to_string(x.x()) + "," + std::to_string(x.y()) + "," +
                              std::to_string(x.z()) + ",0.3,-0.5,0.8";
  // file form of the same contact element
  io::write_json_file(d.raw("f0.json"),
                      io::contact_to_json(contact_from_point_normal(x, Vec3(0.3, -0.5, 0.8).normalized())));

  const std::string common = "blend --c1 " + d("c1.json") + " --c2 " + d("c2.json");
  REQUIRE(run(common + " --contact " + d("f0.json") + " --t0 0.7 --samples 9 --out " + d("n.json"), log) == 0);
  check_schema(d, "n.json", "net");
  CHECK(run("verify --in " + d("n.json"), log) == 0);
  CHECK(run("curvature --in " + d("n.json"), log) == 0);
  CHECK(run(common + " --contact " + contact + " --t0 0.7 --out " + d("m.json"), log) == 0);

  CHECK(run("blend --c1 " + d("c1.json") + " --c2 " + d("far.json") + " --contact " + d("f0.json") +
                " --out " + d("x.json"),
            log) == 1);
  CHECK(run(common + " --contact 1,2,3 --out " + d("x.json"), log) == 2);
  CHECK(run(common + " --contact " + d("f0.json") + " --samples 2 --out " + d("x.json"), log) != 0);
}
