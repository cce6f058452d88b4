#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "strathive/protocol.hpp"
#include "strathive/tuner.hpp"

using namespace strathive;

namespace {

const char* kExample =
    "-tKBO -WSelectFirstNeg -H'(13*Refinedweight(PreferGoals,1,2,2,3,2),2*Clauseweight(ByCreationDate,-2,-1,0.5))'";

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("parse a minimal protocol") {
  const Protocol p = parse_protocol("-tKBO -Wnone -H'(1*FIFOWeight(PreferAll))'");
  CHECK(p.ordering == TermOrdering::kbo);
  CHECK(p.literal_selection == LiteralSelection::none);
  REQUIRE(p.cefs.size() == 1);
  CHECK(p.cefs[0].frequency == 1);
  CHECK(p.cefs[0].cef.weight.kind() == WeightKind::FIFOWeight);
  CHECK(p.cefs[0].cef.priority == PriorityFn::PreferAll);
  CHECK(render_protocol(p) == "-tKBO -Wnone -H'(1*FIFOWeight(PreferAll))'");
}

TEST_CASE("parse two weighted CEFs") {
  const Protocol p = parse_protocol(kExample);
  REQUIRE(p.cefs.size() == 2);
  CHECK(p.cefs[0].frequency == 13);
  CHECK(p.cefs[1].frequency == 2);
  CHECK(p.literal_selection == LiteralSelection::select_first_negative);
  CHECK(render_protocol(p) == kExample);
}

TEST_CASE("malformed protocols are rejected") {
  CHECK_THROWS_AS(parse_protocol("-tKBO -Wnone -H'(0*FIFOWeight(PreferAll))'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO6 -Wnone -H'(1*FIFOWeight(PreferAll))'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO -WSelectComplexG -H'(1*FIFOWeight(PreferAll))'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO -Wnone -H'()'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO -Wnone -H'(1*FIFOWeight(PreferAll),)'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO -Wnone -H'(1*Lev(PreferAll,1,1))'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_protocol("-tKBO -Wnone"), std::invalid_argument);
}

TEST_CASE("arguments render without loss") {
  const Protocol p = parse_protocol("-tNONE -Wnone -H'(1*Lev(PreferAll,1/3,0.125,2))'");
  CHECK(render_protocol(p) == "-tNONE -Wnone -H'(1*Lev(PreferAll,1/3,0.125,2))'");
  CHECK(p.cefs[0].cef.weight.edit_args().c_ins == Rational(1, 3));
}

TEST_CASE("random protocols survive render and parse") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Protocol p = gen::random_protocol(rng);
    const std::string text = render_protocol(p);
    CAPTURE(text);
    CHECK(parse_protocol(text) == p);
    CHECK(protocol_digest(p) == protocol_digest(parse_protocol(text)));
  }
}

TEST_CASE("digest") {
  const std::string d = protocol_digest(parse_protocol(kExample));
  CHECK(d.size() == 16);
  CHECK(std::all_of(d.begin(), d.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }));
  CHECK(d != protocol_digest(default_protocol()));
}

TEST_CASE("global space size") {
  std::mt19937_64 rng(4);
  std::vector<Cef> pool;
  std::set<std::string> seen;
  while (pool.size() < 50) {
    const Cef c = gen::random_cef(rng);
    if (seen.insert(render_cef(c)).second) pool.push_back(c);
  }
  const ConfigSpace s = global_space(pool, 6);
  std::uint64_t want = 2 * 3 * 50 * 8;
  for (int i = 0; i < 5; ++i) want *= 51 * 8;
  REQUIRE(s.size().has_value());
  CHECK(*s.size() == want);
  CHECK(s.log10_size() == doctest::Approx(std::log10(static_cast<double>(want))));
  CHECK_THROWS_AS(global_space({}, 2), std::invalid_argument);
}

TEST_CASE("global space with one CEF and one slot") {
  const std::vector<Cef> one = {parse_cef("Clauseweight(PreferAll,1,1,1)")};
  const ConfigSpace s = global_space(one, 1);
  REQUIRE(*s.size() == 48);
  std::set<std::string> distinct;
  std::vector<std::size_t> choice(s.params().size(), 0);
  for (std::uint64_t idx = 0; idx < 48; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      choice[i] = rest % s.params()[i].domain.size();
      rest /= s.params()[i].domain.size();
    }
    const Protocol p = s.decode(Config{choice});
    CHECK(p.cefs.size() == 1);
    distinct.insert(render_protocol(p));
  }
  CHECK(distinct.size() == 48);
}

TEST_CASE("off slots are dropped, slot 1 is never off") {
  const std::vector<Cef> pool = seed_collection();
  const ConfigSpace s = global_space(pool, 3);
  const auto& slot1 = s.params()[s.index_of("slot1_cef")].domain;
  CHECK(std::find(slot1.begin(), slot1.end(), kSlotOff) == slot1.end());
  const auto& slot2 = s.params()[s.index_of("slot2_cef")].domain;
  CHECK(std::find(slot2.begin(), slot2.end(), kSlotOff) != slot2.end());
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    Config c;
    for (const ParamDef& p : s.params()) c.choice.push_back(rng() % p.domain.size());
    const Protocol p = s.decode(c);
    CHECK(p.cefs.size() >= 1);
    CHECK(p.cefs.size() <= 3);
    for (const WeightedCef& w : p.cefs) CHECK(w.frequency >= 1);
  }
}

TEST_CASE("fine space parameters") {
  const ConfigSpace fifo = fine_space(parse_protocol("-tNONE -Wnone -H'(3*FIFOWeight(PreferAll))'"));
  REQUIRE(fifo.params().size() == 1);
  CHECK(fifo.params()[0].name == "slot1_priority");

  const Protocol theta1 = parse_protocol(kExample);
  const ConfigSpace fine = fine_space(theta1);
  CHECK(fine.params().size() == 2 + 5 + 3);
  const Config lifted = lift_to_fine(fine);
  CHECK(fine.decode(lifted) == theta1);
  std::vector<std::string> values;
  for (const ParamDef& p : fine.params()) values.push_back(fine.value(lifted, p.name));
  CHECK(values == std::vector<std::string>{"PreferGoals", "1", "2", "2", "3", "2", "ByCreationDate", "-2", "-1", "0.5"});

  // Only priorities and arguments move.
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    Config c;
    for (const ParamDef& p : fine.params()) c.choice.push_back(rng() % p.domain.size());
    const Protocol q = fine.decode(c);
    CHECK(q.ordering == theta1.ordering);
    CHECK(q.literal_selection == theta1.literal_selection);
    REQUIRE(q.cefs.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(q.cefs[i].frequency == theta1.cefs[i].frequency);
      CHECK(q.cefs[i].cef.weight.kind() == theta1.cefs[i].cef.weight.kind());
    }
  }
}

TEST_CASE("projecting fine configurations back to the global space") {
  const Protocol theta1 = parse_protocol(kExample);
  std::vector<Cef> collection = seed_collection();
  for (const WeightedCef& w : theta1.cefs) collection.push_back(w.cef);

  const ConfigSpace fine = fine_space(theta1);
  const Config lifted = lift_to_fine(fine);
  const GlobalEmbedding same = project_to_global(fine, lifted, collection, 4);
  CHECK(same.added == 0);
  CHECK(same.collection == collection);
  CHECK(same.space.decode(same.config) == theta1);

  Config changed = lifted;
  const std::size_t prio = fine.index_of("slot1_priority");
  changed.choice[prio] = (changed.choice[prio] + 1) % fine.params()[prio].domain.size();
  const GlobalEmbedding one = project_to_global(fine, changed, collection, 4);
  CHECK(one.added == 1);
  CHECK(one.collection.size() == collection.size() + 1);
  CHECK(one.space.decode(one.config) == fine.decode(changed));

  const GlobalEmbedding e = embed_in_global(theta1, seed_collection(), 4);
  CHECK(e.added == 2);
  CHECK(e.space.decode(e.config) == theta1);
  CHECK_THROWS_AS(embed_in_global(theta1, seed_collection(), 1), std::invalid_argument);
}

TEST_CASE("neighborhood and ordinal frequencies") {
  const ConfigSpace s = global_space(seed_collection(), 2);
  const auto& freq = s.params()[s.index_of("slot1_freq")];
  CHECK(freq.ordinal);
  CHECK(freq.domain == std::vector<std::string>{"1", "2", "4", "6", "8", "13", "16", "20"});
}

TEST_CASE("argument domains load from JSON") {
  const ArgDomains d = ArgDomains::defaults();
  const ArgDomains again = ArgDomains::from_json(d.to_json());
  CHECK(again.symbol_weight == d.symbol_weight);
  CHECK(again.signed_weight == d.signed_weight);
  CHECK(again.frequency == d.frequency);
  const ArgDomains custom = ArgDomains::from_json(R"({"cost": ["0", "1/2", 3]})");
  CHECK(custom.cost == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(3)});
  CHECK(custom.multiplier == d.multiplier);
  CHECK_THROWS(ArgDomains::from_json(R"({"cost": []})"));
}

}  // TEST_SUITE
