#include <doctest.h>

#include "evlogic/errors.hpp"
#include "evlogic/fuzz.hpp"
#include "evlogic/hotel.hpp"
#include "evlogic/proof.hpp"

using namespace evlogic;

namespace {

constexpr HotelVariant I = HotelVariant::one;
constexpr HotelVariant II = HotelVariant::two;

HotelWorld W(const char* literal) { return parse_world_literal(literal); }

HotelVerdict eval(HotelVariant v, const char* world, const char* formula) {
  return hotel_eval(v, W(world), parse(formula));
}

Formula random_hotel_formula(Rng& rng, HotelVariant v, std::size_t depth = 3) {
  for (;;) {
    Formula f = random_formula(rng, depth, hotel_atom_pool(v));
    if (modal_depth(f) <= hotel_max_modal_depth) return f;
  }
}

}  // namespace

TEST_CASE("world literals") {
  HotelWorld w = W("default=occupied; 7=vacant");
  CHECK(w.default_state == RoomState::occupied);
  CHECK(w.at(7) == RoomState::vacant);
  CHECK(w.at(8) == RoomState::occupied);
  CHECK(world_literal(w) == "default=occupied; 7=vacant");
  CHECK(W(" default = vacant ;3=infested; ") == HotelWorld{RoomState::vacant, {{3, RoomState::infested}}});
  for (const char* bad : {"", "7=vacant", "default=full", "default=vacant; x=vacant", "default=vacant; 3=vacant; 3=occupied",
                          "default=vacant; 3", "default=vacant; default=occupied"})
    CHECK_THROWS_AS(W(bad), ParseError);
}

TEST_CASE("validate_world") {
  CHECK_FALSE(validate_world(II, W("default=vacant; 3=infested")));
  CHECK(validate_world(II, W("default=occupied; 3=infested")));
  CHECK(validate_world(I, HotelWorld{RoomState::occupied, {{5, RoomState::occupied}}}));
  CHECK(validate_world(I, W("default=vacant; 3=infested")));
  CHECK(validate_world(II, W("default=infested; 1=occupied")));
  CHECK_FALSE(validate_world(II, W("default=infested; 1=vacant")));
  CHECK_THROWS_AS(hotel_eval(II, W("default=occupied; 3=infested"), parse("exists_vacant")), ModelError);
}

TEST_CASE("atoms") {
  auto a = parse_hotel_atom("room_12_infested", II);
  CHECK(a.kind == HotelAtom::Kind::room);
  CHECK(a.room == 12);
  CHECK(a.state == RoomState::infested);
  CHECK(parse_hotel_atom("exists_vacant", I).kind == HotelAtom::Kind::exists);
  for (const char* bad : {"p", "exists_", "exists_full", "room_x_vacant", "room__vacant", "room_1", "room_-1_vacant"})
    CHECK_THROWS_AS(parse_hotel_atom(bad, II), ModelError);
  CHECK_THROWS_AS(parse_hotel_atom("exists_infested", I), ModelError);
  CHECK_THROWS_AS(HotelEvaluator(I, parse("p")), ModelError);
}

TEST_CASE("capacity bounds") {
  CHECK_THROWS_AS(HotelEvaluator(I, parse("[][][][][]exists_vacant")), CapacityError);
  CHECK_NOTHROW(HotelEvaluator(I, parse("[][.][][.]exists_vacant")));
  CHECK_THROWS_AS(HotelEvaluator(I, parse("room_0_vacant -> room_1_vacant -> room_2_vacant -> room_3_vacant -> "
                                          "room_4_vacant -> room_5_vacant -> room_6_vacant")),
                  CapacityError);
  CHECK(default_cap(parse("[.](exists_vacant -> [.]exists_occupied) -> exists_vacant")) == 2 + 2 + 2);
  CHECK(HotelEvaluator(I, parse("exists_vacant"), 9).cap() == 9);
}

TEST_CASE("full hotel, variant I") {
  CHECK(eval(I, "default=occupied", "!([.]exists_vacant)").value);
  CHECK(eval(I, "default=occupied", "!([.](!([.]exists_vacant)))").value);
  CHECK(eval(I, "default=occupied", "[](!exists_vacant)").value);
  auto one_vacancy = eval(I, "default=occupied; 7=vacant", "[.]exists_vacant");
  CHECK(one_vacancy.value);
  REQUIRE(one_vacancy.witness);
  CHECK(one_vacancy.witness->tracked == std::set<RoomIndex>{7});
  CHECK(one_vacancy.witness->fresh_count == 0);
}

TEST_CASE("empty hotel, variant II") {
  CHECK(eval(II, "default=vacant", "!([.](!exists_occupied))").value);
  CHECK_FALSE(eval(II, "default=vacant", "[.](!([.](!exists_occupied)))").value);
  auto bugs = eval(II, "default=vacant; 3=infested", "[.](!exists_occupied)");
  CHECK(bugs.value);
  REQUIRE(bugs.witness);
  CHECK(bugs.witness->tracked == std::set<RoomIndex>{3});
  CHECK(bugs.witness->fresh_count == 0);
}

TEST_CASE("small cases worked by hand") {
  // one examined vacant room settles a vacancy; nothing examined settles nothing
  auto v = eval(I, "default=vacant", "[.]exists_vacant");
  CHECK(v.value);
  REQUIRE(v.witness);
  CHECK(v.witness->tracked.empty());
  CHECK(v.witness->fresh_count == 1);
  CHECK_FALSE(eval(I, "default=vacant", "[.]!exists_occupied").value);
  CHECK(eval(I, "default=vacant", "[.]room_0_vacant").witness->tracked == std::set<RoomIndex>{0});
  CHECK(eval(I, "default=occupied; 4=vacant", "[.]room_4_vacant -> room_4_vacant").value);
  // an infested room is conclusive evidence that no guest is present
  CHECK(eval(II, "default=infested", "[.]!exists_occupied").witness->fresh_count == 1);
  CHECK_FALSE(eval(II, "default=vacant", "[.]!exists_infested").value);
  CHECK(eval(II, "default=vacant", "![.]exists_infested").value);
  // one occupied room rules out bedbugs anywhere
  CHECK(eval(II, "default=vacant; 5=occupied", "[.]!exists_infested").witness->tracked == std::set<RoomIndex>{5});
  // verdicts carry no witness unless the root is a true [.]
  CHECK_FALSE(eval(I, "default=vacant", "exists_vacant").witness);
  CHECK_FALSE(eval(I, "default=occupied", "[.]exists_vacant").witness);
}

TEST_CASE("counterexample reports") {
  REQUIRE(counterexample_names().size() == 2);
  auto ni = counterexample_report("negative-introspection");
  CHECK(ni.variant == I);
  CHECK(ni.world == W("default=occupied"));
  CHECK(ni.formula == parse("![.]exists_vacant -> [.]![.]exists_vacant"));
  CHECK_FALSE(ni.verdict);
  CHECK(ni.reproduced());

  auto wni = counterexample_report("weak-negative-introspection");
  CHECK(wni.variant == II);
  CHECK(wni.world == W("default=vacant"));
  CHECK_FALSE(wni.verdict);
  CHECK(wni.reproduced());

  for (const auto& report : {ni, wni}) {
    CHECK(report.rows.size() >= 5);
    for (const auto& row : report.rows) {
      CAPTURE(row.formula);
      auto again = hotel_eval(report.variant, W(row.world.c_str()), parse(row.formula));
      CHECK(again.value == row.verdict);
      CHECK(row.verdict == row.expected);
    }
  }
  CHECK_THROWS_AS(counterexample_report("positive-introspection"), std::invalid_argument);
}

TEST_CASE("separation of [] and [.]") {
  auto boxed = eval(I, "default=occupied", "[]!exists_vacant");
  auto attained = eval(I, "default=occupied", "[.]!exists_vacant");
  CHECK(boxed.value);
  CHECK_FALSE(attained.value);
}

TEST_CASE("verdicts are stable under larger caps") {
  for (auto v : {I, II}) {
    Rng rng(v == I ? 101 : 202);
    for (int i = 0; i < 500; ++i) {
      HotelWorld w = random_hotel_world(rng, v);
      Formula f = random_hotel_formula(rng, v);
      const std::size_t b0 = default_cap(f);
      bool base = hotel_eval(v, w, f, b0).value;
      CAPTURE(world_literal(w));
      CAPTURE(print(f));
      for (std::size_t extra = 1; extra <= 3; ++extra) REQUIRE(hotel_eval(v, w, f, b0 + extra).value == base);
    }
  }
}

TEST_CASE("renaming unnamed rooms does not change verdicts") {
  for (auto v : {I, II}) {
    Rng rng(v == I ? 7 : 8);
    std::uniform_int_distribution<RoomIndex> room(3, 40);
    for (int i = 0; i < 300; ++i) {
      HotelWorld w = random_hotel_world(rng, v, 4, 12);
      Formula f = random_hotel_formula(rng, v);
      HotelEvaluator ev(v, f);
      RoomIndex a = room(rng), b = room(rng);
      HotelWorld swapped{w.default_state, {}};
      for (auto [r, s] : w.exceptions) swapped.exceptions[r == a ? b : r == b ? a : r] = s;
      REQUIRE(ev.eval(w).value == ev.eval(swapped).value);
    }
  }
}

TEST_CASE("truth and monotonicity hold pointwise") {
  for (auto v : {I, II}) {
    Rng rng(v == I ? 55 : 66);
    for (int i = 0; i < 400; ++i) {
      HotelWorld w = random_hotel_world(rng, v);
      Formula f = random_hotel_formula(rng, v, 2);
      bool plain = hotel_eval(v, w, f).value;
      bool boxed = hotel_eval(v, w, Formula::know(f)).value;
      bool attained = hotel_eval(v, w, Formula::attain(f)).value;
      if (boxed) REQUIRE(plain);
      if (attained) REQUIRE(boxed);
    }
  }
}

TEST_CASE("witnesses establish the inner formula") {
  for (auto v : {I, II}) {
    Rng rng(v == I ? 13 : 14);
    int witnessed = 0;
    for (int i = 0; i < 400; ++i) {
      HotelWorld w = random_hotel_world(rng, v);
      Formula inner = random_hotel_formula(rng, v, 2);
      auto verdict = hotel_eval(v, w, Formula::attain(inner));
      if (!verdict.value) continue;
      REQUIRE(verdict.witness);
      CHECK(verdict.witness->fresh_count <= verdict.cap);
      HotelEvaluator check(v, inner, verdict.cap);
      REQUIRE(check.holds_on_class(w, *verdict.witness));
      if (verdict.witness->fresh_count > 0) {
        EvidenceWitness fewer = *verdict.witness;
        --fewer.fresh_count;
        CHECK_FALSE(check.holds_on_class(w, fewer));
      }
      ++witnessed;
    }
    CHECK(witnessed > 50);
  }
}

TEST_CASE("kernel theorems hold across both hotel families") {
  for (auto v : {I, II}) {
    auto panel = hotel_panel(v, 20);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      Formula f = to_hotel_atoms(random_theorem(seed, 10).conclusion, v);
      if (modal_depth(f) > hotel_max_modal_depth) continue;
      HotelEvaluator ev(v, f);
      for (const auto& w : panel) {
        CAPTURE(print(f));
        CAPTURE(world_literal(w));
        REQUIRE(ev.eval(w).value);
      }
    }
  }
}
