#include <algorithm>
#include <set>

#include "doctest.h"
#include "liechannel/complex.hpp"
#include "liechannel/tolerance.hpp"

using namespace liechannel;

namespace {

int count_label(const QuadComplex& c, Label l) {
  return static_cast<int>(std::count_if(c.edges().begin(), c.edges().end(),
                                        [&](const Edge& e) { return e.label == l; }));
}

void check_partition(const QuadComplex& c, const std::vector<Ribbon>& rs) {
  std::multiset<int> faces;
  for (const auto& r : rs) faces.insert(r.faces.begin(), r.faces.end());
  CHECK(faces.size() == c.faces().size());
  for (int f = 0; f < static_cast<int>(c.faces().size()); ++f) CHECK(faces.count(f) == 1);
}

}  // namespace

TEST_CASE("grid counts") {
  const auto g = make_grid(3, 3, false);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edges().size() == 12);
  CHECK(count_label(g, Label::Plus) == 6);
  CHECK(count_label(g, Label::Minus) == 6);
  CHECK(g.faces().size() == 4);
  CHECK(validate(g).empty());

  const auto w = make_grid(4, 2, true);
  CHECK(w.vertex_count() == 8);
  CHECK(w.edges().size() == 12);
  CHECK(w.faces().size() == 4);
  for (const auto& l : plus_lines(w)) {
    CHECK(l.closed);
    CHECK(l.vertices.size() == 4);
    CHECK(l.edges.size() == 4);
  }
  CHECK(validate(w).empty());

  CHECK_THROWS_AS(make_grid(1, 5, false), GeometryError);
  CHECK_THROWS_AS(make_grid(2, 5, true), GeometryError);

  for (int np = 2; np < 6; ++np)
    for (int nm = 2; nm < 6; ++nm) {
      CHECK(make_grid(np, nm, false).faces().size() == std::size_t((np - 1) * (nm - 1)));
      if (np >= 3) CHECK(make_grid(np, nm, true).faces().size() == std::size_t(np * (nm - 1)));
    }
}

TEST_CASE("lines and ribbons of a grid") {
  const auto g = make_grid(3, 3, false);
  const auto pl = plus_lines(g);
  REQUIRE(pl.size() == 3);
  for (std::size_t b = 0; b < pl.size(); ++b) {
    CHECK_FALSE(pl[b].closed);
    CHECK(pl[b].vertices == std::vector<int>{int(3 * b), int(3 * b + 1), int(3 * b + 2)});
  }
  const auto pr = plus_ribbons(g);
  REQUIRE(pr.size() == 2);
  for (const auto& r : pr) {
    CHECK(r.faces.size() == 2);
    CHECK(r.rungs.size() == 3);
    for (int e : r.rungs) CHECK(g.edges()[e].label == Label::Minus);
  }
  CHECK(pr[0].faces == std::vector<int>{0, 1});
  const auto mr = minus_ribbons(g);
  REQUIRE(mr.size() == 2);
  CHECK(mr[0].faces == std::vector<int>{0, 2});
  for (int e : mr[0].rungs) CHECK(g.edges()[e].label == Label::Plus);
  check_partition(g, pr);
  check_partition(g, mr);

  const auto w = make_grid(5, 3, true);
  const auto wr = plus_ribbons(w);
  REQUIRE(wr.size() == 2);
  CHECK(wr[0].closed);
  CHECK(wr[0].faces.size() == 5);
  CHECK(wr[0].rungs.size() == 5);
  check_partition(w, wr);
  check_partition(w, minus_ribbons(w));

  const auto one = make_grid(2, 2, false);
  CHECK(plus_ribbons(one).size() == 1);
  CHECK(plus_ribbons(one)[0].faces.size() == 1);
  CHECK(minus_ribbons(one)[0].faces.size() == 1);
}

TEST_CASE("relabelling swaps plus and minus structures") {
  for (auto g : {make_grid(4, 3, false), make_grid(5, 4, true)}) {
    const auto r = relabelled(g);
    CHECK(validate(r).empty());
    const auto a = plus_lines(g), b = minus_lines(r);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].vertices == b[i].vertices);
    const auto ra = plus_ribbons(g), rb = minus_ribbons(r);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].faces == rb[i].faces);
  }
}

TEST_CASE("validate flags broken complexes") {
  const auto g = make_grid(3, 3, false);
  {
    auto edges = g.edges();
    edges.push_back({4, 0, Label::Plus});  // centre vertex gets degree 5
    const QuadComplex bad(g.vertex_count(), edges, g.faces());
    const auto d = validate(bad);
    CHECK(std::any_of(d.begin(), d.end(), [](const Diagnostic& x) {
      return x.kind == "odd-degree" && x.cells == std::vector<int>{4};
    }));
  }
  {
    auto faces = g.faces();
    faces[0].v = {faces[0].v[1], faces[0].v[2], faces[0].v[3], faces[0].v[0]};
    const QuadComplex bad(g.vertex_count(), g.edges(), faces);
    const auto d = validate(bad);
    CHECK(std::any_of(d.begin(), d.end(),
                      [](const Diagnostic& x) { return x.kind == "face-labelling"; }));
  }
  {
    auto edges = g.edges();
    edges.push_back({9, 10, Label::Plus});
    const QuadComplex bad(11, edges, g.faces());
    const auto d = validate(bad);
    CHECK(std::any_of(d.begin(), d.end(),
                      [](const Diagnostic& x) { return x.kind == "disconnected"; }));
  }
}
