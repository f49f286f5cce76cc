#include <cstdint>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "golden_table.hpp"
#include "helpers.hpp"
#include "permlang/burn_check.hpp"
#include "permlang/measure.hpp"
#include "permlang/program.hpp"

using namespace permlang;

TEST_SUITE("burncheck") {
  TEST_CASE("unprotected count, pseudo size and discipline golden table") {
    std::vector<golden::Row> rows = golden::rows();
    REQUIRE(rows.size() == 30);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CAPTURE(i);
      CHECK(nb_unprotected_apps(rows[i].e) == rows[i].nb);
      CHECK(pseudo_size(rows[i].e) == rows[i].ps);
      CHECK(enough_burns(rows[i].e) == rows[i].eb);
    }
  }

  TEST_CASE("substituting a value never changes the unprotected count") {
    std::vector<LevelDecl> decls{{"L0", Level{0}}, {"L1", Level{1}},
                                 {"L2", Level{3}}};
    gen::Gen g(777);
    for (int i = 0; i < 3000; ++i) {
      ExprPtr e = g.printable(4, {"x"}, decls);
      ValPtr v = g.value(3);
      ExprPtr e2 = subst("x", v, e);
      CAPTURE(i);
      CHECK(nb_unprotected_apps(e2) == nb_unprotected_apps(e));
      CHECK(pseudo_size(e2) <= pseudo_size(e));
    }
  }

  TEST_CASE("violation paths name the offending body") {
    Config c;
    c.threads.push_back(
        ex::app(ex::rec("f", "x", ex::app(ex::var("f"), ex::var("x"))),
                ex::int_(0)));
    CheckReport r = enough_burns_cfg(c);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].path == "thread[0]/app.fn/rec.body");
    CHECK(r.violations[0].kind == "unprotected-app-in-body");
    CHECK(r.violations[0].count == 1);
  }

  TEST_CASE("violations inside clean outer bodies get nested paths") {
    ExprPtr inner = ex::rec("g", "z", ex::app(ex::var("g"), ex::var("z")));
    Config c;
    c.threads.push_back(ex::rec("f", "x", ex::let_("y", inner, ex::int_(0))));
    CheckReport r = enough_burns_cfg(c);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].path == "thread[0]/rec.body/let.bound/rec.body");
  }

  TEST_CASE("heap cells are checked, with value paths") {
    Config c;
    c.threads.push_back(ex::int_(0));
    c.state.heap[5] = ex::vpair(
        ex::vint(1), ex::vclo("f", "x", ex::app(ex::var("f"), ex::var("x"))));
    c.state.next_loc = 6;
    CheckReport r = enough_burns_cfg(c);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].path == "heap[5]/pair.second/closure.body");
    CHECK(enough_burns_heap(c.state) == false);
  }

  TEST_CASE("discipline verdicts across the corpus") {
    const char* pass[] = {"trivial.plt",        "faa_counter.plt",
                          "single_atomic.plt",  "mailbox_demo.plt",
                          "stack_push_2.plt",   "stack_push_pop.plt",
                          "treiber.plt",        "stack_missing_perms.plt"};
    for (const char* name : pass) {
      CAPTURE(name);
      Program p = helpers::load_corpus(name);
      CHECK(enough_burns_cfg(initial_config(p)).ok);
    }

    const char* fail[] = {"omega.plt", "landin_knot.plt"};
    for (const char* name : fail) {
      CAPTURE(name);
      Program p = helpers::load_corpus(name);
      CheckReport r = enough_burns_cfg(initial_config(p));
      REQUIRE_FALSE(r.ok);
      for (const CheckViolation& v : r.violations) {
        CHECK(v.kind == "unprotected-app-in-body");
        CHECK(v.count > 0);
        CHECK(v.path.substr(0, 7) == "thread[");
      }
    }
  }

  TEST_CASE("omega is rejected once per self applying lambda") {
    Program p = helpers::load_corpus("omega.plt");
    CheckReport r = enough_burns_cfg(initial_config(p));
    REQUIRE(r.violations.size() == 2);
    CHECK(r.violations[0].path == "thread[0]/app.fn/rec.body");
    CHECK(r.violations[1].path == "thread[0]/app.arg/rec.body");
    for (const CheckViolation& v : r.violations) {
      CHECK(v.kind == "unprotected-app-in-body");
      CHECK(v.count == 1);
    }
  }
}
