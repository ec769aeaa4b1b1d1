// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Pass a list of criterion numbers to run only those.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "tiling/classify.hpp"
#include "tiling/cm.hpp"
#include "tiling/cyclo.hpp"
#include "tiling/fillout.hpp"
#include "tiling/lowerbound.hpp"
#include "tiling/zset.hpp"

namespace {

using namespace tiling;
using PPS = PrimePowerSet;
using V = std::vector<std::int64_t>;

// A failed check records its message and keeps going.
struct Checker {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

DivisorSignature sig(std::int64_t n, V d) {
  std::sort(d.begin(), d.end());
  return {n, std::move(d)};
}

ResidueSet set144(V e) { return ResidueSet(144, e); }

// Published representatives.
const ResidueSet kP1A = set144({0, 17, 20, 23, 28, 29, 40, 48, 53, 59, 65, 68, 76, 88, 89, 95, 96, 101, 116, 124, 125, 131, 136, 137});
const ResidueSet kP1B = set144({0, 32, 58, 90, 112, 122});
const ResidueSet kP2A = set144({0, 34, 40, 46, 48, 58, 88, 96, 106, 118, 130, 136});
const ResidueSet kP2B = set144({0, 16, 29, 44, 57, 73, 80, 93, 108, 109, 124, 137});
const ResidueSet kP3A = set144({0, 9, 17, 26, 27, 34, 39, 40, 48, 51, 57, 65, 74, 82, 88, 96, 99, 105, 111, 113, 122, 123, 130, 136});
const ResidueSet kP3B = set144({0, 36, 64, 80, 100, 116});
const ResidueSet kP4T1 = set144({0, 18, 28, 44, 54, 64, 80, 82, 98, 108, 118, 134});
const ResidueSet kP4S1 = set144({0, 16, 30, 44, 58, 74, 80, 94, 108, 110, 124, 138});
const ResidueSet kP4T2 = set144({0, 33, 40, 45, 48, 57, 88, 96, 105, 117, 129, 136});
const ResidueSet kP4S2 = set144({0, 27, 30, 35, 60, 72, 75, 83, 102, 123, 131, 132});

void criterion1(Checker& check) {
  for (std::int64_t n = 1; n <= 300; ++n) {
    IntPoly prod{1};
    for (auto d : divisors(n)) prod = multiply(prod, cyclotomic(d));
    check(prod == IntPoly::x_pow_minus_one(static_cast<std::size_t>(n)), "product over d | " + std::to_string(n));
    check(cyclotomic(n).degree() == euler_phi(n), "degree of Phi_" + std::to_string(n));
  }
}

void criterion2(Checker& check) {
  const auto r1 = decide_tiles_Z(V{0, 1, 2, 5, 6, 7});
  check(r1.t1 && !r1.t2 && r1.verdict == Verdict::DoesNotTile, "{0,1,2,5,6,7}");
  check(decide_tiles_Z(V{0, 1, 2, 3}).verdict == Verdict::Tiles, "{0,1,2,3}");
  V thirty;
  for (auto a : {0, 1, 2, 5, 6, 7})
    for (auto b : {0, 12, 24, 36, 48}) thirty.push_back(a + b);
  const auto r3 = decide_tiles_Z(thirty);
  check(r3.verdict == Verdict::UnknownConjectural, "thirty-element set");
  check(r3.spectrum == PPS{2, 3, 5} && r3.t1 && !r3.t2, "thirty-element set: spectrum and conditions");
}

void criterion3(Checker& check) {
  const auto parts = enumerate_partitions(144);
  check(parts.size() == 32, "32 partitions");
  const std::vector<std::pair<PPS, PPS>> expect{
      {{3, 4, 8}, {2, 9, 16}},  {{3, 4, 9}, {2, 8, 16}}, {{3, 4, 16}, {2, 8, 9}},    {{3, 8, 9}, {2, 4, 16}},
      {{3, 8, 16}, {2, 4, 9}},  {{4, 8, 9}, {2, 3, 16}}, {{4, 8, 16}, {2, 3, 9}},    {{4, 9, 16}, {2, 3, 8}},
      {{8, 9, 16}, {2, 3, 4}},  {{2, 3, 4, 8}, {9, 16}}, {{2, 3, 4, 16}, {8, 9}},    {{2, 3, 8, 9}, {4, 16}},
      {{2, 3, 8, 16}, {4, 9}},  {{2, 4, 8, 16}, {3, 9}}, {{2, 4, 9, 16}, {3, 8}},    {{2, 8, 9, 16}, {3, 4}},
      {{3, 4, 8, 16}, {2, 9}},  {{4, 8, 9, 16}, {2, 3}}, {{2, 3, 4, 8, 16}, {9}},    {{3, 4, 8, 9}, {2, 16}},
      {{2, 3, 4, 9}, {8, 16}},  {{2, 3, 4, 8, 9}, {16}}};
  std::set<std::string> want, got;
  for (const auto& [a, b] : expect) {
    const Partition p(a, b);
    want.insert(p.h.to_string() + "|" + p.hc.to_string());
  }
  for (const auto& p : parts)
    if (!step2_discard_reason(p, 144)) got.insert(p.h.to_string() + "|" + p.hc.to_string());
  check(want.size() == 22 && got == want, "Step 2 survivors (" + std::to_string(got.size()) + " kept)");
}

void criterion4(Checker& check) {
  const PPS h{4, 9};
  const auto bases = base_tiles(h, 36);
  check(bases.size() == 6, "6 base tiles");
  std::vector<ResidueSet> lifts;
  for (const auto& b : bases)
    for (auto& a : lift_tiles(b, 144)) lifts.push_back(std::move(a));
  check(lifts.size() == 6144, "6144 lifts");
  const auto classes = group_into_classes(lifts, h);
  std::set<DivisorSignature> sigs;
  for (const auto& c : classes) sigs.insert(c.sig);
  check(sigs == std::set<DivisorSignature>{sig(144, {72, 36, 18, 9, 4}), sig(144, {36, 12, 9, 4}), sig(144, {36, 18, 9, 4}),
                                           sig(144, {36, 18, 12, 9, 4}), sig(144, {72, 36, 18, 12, 9, 4})},
        "five class signatures");
  for (const auto& c : classes) check(forces_periodic(c.sig.complement()), "Step 4 discards " + c.sig.to_string());
  const auto r = detail::classify_partition(144, Partition(PPS{2, 3, 8, 16}, h), default_skip_list(144), {});
  check(r.status == PartitionStatus::NoSurvivingClasses && r.stats.lifts == 6144 && r.stats.classes == 5 &&
            r.stats.discarded_step4 == 5,
        "pipeline on {2,3,8,16}|{4,9}");
}

void criterion5(Checker& check) {
  check(verify_tiling(kP1A, kP1B), "{2,8,9,16}|{3,4}");
  check(verify_tiling(kP2B, kP2A), "{4,9,16}|{2,3,8}");
  check(verify_tiling(kP3A, kP3B), "{2,4,9,16}|{3,8}");
  check(verify_tiling(kP4T1, kP4T2), "{3,4,8}|{2,9,16}: T1 with T2");
  check(verify_tiling(kP4T1, kP4S2), "T1 with S2");
  check(verify_tiling(kP4S1, kP4T2), "S1 with T2");
  check(!verify_tiling(kP4S1, kP4S2), "S1 with S2 must not tile");
  for (const auto* s : {&kP1A, &kP1B, &kP2A, &kP2B, &kP3A, &kP3B, &kP4T1, &kP4S1, &kP4T2, &kP4S2})
    check(is_nonperiodic(*s), "representative {" + s->to_string() + "} is non-periodic");
}

void criterion6(Checker& check) {
  const auto b = nonperiodic_orbits(explore(kP1B));
  check(b.size() == 36, "36 orbits from the 6-element tile (got " + std::to_string(b.size()) + ")");
  for (const auto& x : b) check(x.size() == 24, "cardinality 24");
  const auto a = nonperiodic_orbits(explore(kP1A));
  check(a.size() == 6, "6 orbits from the 24-element tile (got " + std::to_string(a.size()) + ")");
  for (const auto& x : a) check(x.size() == 6, "cardinality 6");
}

struct ExpectedSide {
  std::map<DivisorSignature, std::int64_t> classes;  // count -1: only the side total is known
  std::int64_t total = 0;
  std::int64_t cardinality = 0;
};

struct ExpectedPartition {
  Partition partition;
  ExpectedSide h, hc;
  std::set<std::pair<DivisorSignature, DivisorSignature>> non_tiling;  // (h class, hc class)
};

void check_side(Checker& check, const std::string& tag, const std::vector<TileClass>& got, const ExpectedSide& want) {
  std::map<DivisorSignature, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& c : got) {
    counts[c.sig] = static_cast<std::int64_t>(c.members.size());
    total += static_cast<std::int64_t>(c.members.size());
    check(c.cardinality == want.cardinality, tag + ": cardinality of " + c.sig.to_string());
  }
  check(total == want.total, tag + ": " + std::to_string(total) + " orbits, expected " + std::to_string(want.total));
  check(counts.size() == want.classes.size(), tag + ": number of classes");
  for (const auto& [s, n] : want.classes) {
    const auto it = counts.find(s);
    check(it != counts.end(), tag + ": missing class " + s.to_string());
    if (it != counts.end() && n >= 0) check(it->second == n, tag + ": count of " + s.to_string());
  }
}

void check_classification(Checker& check, const ClassificationReport& r, const std::vector<ExpectedPartition>& want) {
  std::set<std::string> seen;
  for (const auto& p : r.partitions) {
    const std::string name = "{" + p.partition.h.to_string() + "}|{" + p.partition.hc.to_string() + "}";
    const auto it = std::find_if(want.begin(), want.end(), [&](const ExpectedPartition& e) { return e.partition == p.partition; });
    if (it == want.end()) {
      check(p.status != PartitionStatus::Classified, name + " should yield nothing");
      continue;
    }
    seen.insert(name);
    check(p.status == PartitionStatus::Classified, name + " should be classified");
    check_side(check, name + " H", p.a_classes, it->h);
    check_side(check, name + " Hc", p.b_classes, it->hc);
    for (std::size_t i = 0; i < p.a_classes.size(); ++i)
      for (std::size_t j = 0; j < p.b_classes.size(); ++j) {
        const bool expect = !it->non_tiling.count({p.a_classes[i].sig, p.b_classes[j].sig});
        check(p.coverage[i][j] == expect, name + ": coverage entry " + std::to_string(i) + "," + std::to_string(j));
        check(verify_tiling(p.a_classes[i].members.front(), p.b_classes[j].members.front()) == expect,
              name + ": sampled pair " + std::to_string(i) + "," + std::to_string(j));
      }
  }
  check(seen.size() == want.size(), "all expected partitions classified");
}

void criterion7(Checker& check) {
  ClassifyConfig cfg;
  cfg.threads = std::max(1U, std::thread::hardware_concurrency());
  const auto r = classify(144, cfg);
  const auto s = [](V d) { return sig(144, std::move(d)); };
  const std::vector<ExpectedPartition> want{
      {Partition(PPS{2, 8, 9, 16}, PPS{3, 4}),
       {{{s({144, 72, 24, 18, 16, 9, 8, 2}), -1}, {s({144, 72, 18, 16, 9, 8, 2}), -1}}, 36, 24},
       {{{s({48, 36, 24, 12, 6, 4, 3}), 6}}, 6, 6},
       {}},
      {Partition(PPS{4, 9, 16}, PPS{2, 3, 8}),
       {{{s({72, 48, 24, 18, 12, 8, 6, 3, 2}), -1}, {s({72, 48, 24, 12, 8, 6, 3, 2}), -1}}, 324, 12},
       {{{s({144, 36, 18, 16, 9, 4}), 6}}, 6, 12},
       {}},
      {Partition(PPS{2, 4, 9, 16}, PPS{3, 8}),
       {{{s({144, 36, 18, 16, 12, 9, 4, 2}), -1}, {s({144, 36, 18, 16, 9, 6, 4, 2}), -1}, {s({144, 36, 18, 16, 9, 4, 2}), -1}},
        8640,
        24},
       {{{s({72, 48, 24, 12, 8, 6, 3}), 3}}, 3, 6},
       {}},
      {Partition(PPS{3, 4, 8}, PPS{2, 9, 16}),
       {{{s({144, 36, 18, 16, 9, 2}), 12}, {s({144, 18, 16, 9, 2}), 48}}, 60, 12},
       {{{s({72, 48, 36, 24, 12, 8, 6, 4, 3}), 6}, {s({72, 48, 24, 12, 8, 6, 4, 3}), 156}}, 162, 12},
       {{s({144, 18, 16, 9, 2}), s({72, 48, 24, 12, 8, 6, 4, 3})}}},
  };
  check_classification(check, r, want);
  int skipped = 0;
  for (const auto& p : r.partitions)
    if (p.status == PartitionStatus::SkippedExceptional) {
      ++skipped;
      check(p.partition.has_side(PPS{2, 4, 8, 16}), "only {2,4,8,16}|{3,9} is skipped");
    }
  check(skipped == 1, "one skipped partition");
}

void criterion8(Checker& check) {
  std::mt19937_64 rng(20240611);
  for (std::int64_t n : {8, 12, 16, 18, 24, 36}) {
    int tiling = 0;
    for (int rep = 0; rep < 200; ++rep) {
      const auto a = oracle::random_tile_candidate(rng, n);
      const auto got = explore(a);
      tiling += !got.empty();
      check(got == oracle::cover_oracle(a), "Z_" + std::to_string(n) + " {" + a.to_string() + "}");
    }
    check(tiling >= 50, "Z_" + std::to_string(n) + ": too few tiles drawn");
  }
}

void criterion9(Checker& check) {
  for (const auto& p : classify(48).partitions) check(p.status != PartitionStatus::Classified, "Z_48 must have no non-periodic tilings");
  std::set<std::int64_t> cards;
  int classified = 0;
  for (const auto& p : classify(72).partitions) {
    if (p.status != PartitionStatus::Classified) continue;
    ++classified;
    for (const auto* side : {&p.a_classes, &p.b_classes})
      for (const auto& c : *side) cards.insert(c.cardinality);
  }
  check(classified > 0, "Z_72 has non-periodic tilings");
  check(cards == std::set<std::int64_t>{6, 12}, "Z_72 cardinalities are 6 and 12");
}

void criterion10(Checker& check) {
  const auto a = rectangle_tile(7, 11);
  const auto bs = sample_complements(7, 11, 100, 7);
  check(std::set<ResidueSet>(bs.begin(), bs.end()).size() == 100, "100 distinct samples");
  for (const auto& b : bs) {
    check(verify_tiling(a, b), "sample tiles Z_2310");
    check(least_period(b) == 2310, "sample has least period 2310");
  }
}

void criterion11(Checker& check) {
  std::mt19937_64 rng(99);
  int tiles_verdicts = 0;
  for (int rep = 0; rep < 1500; ++rep) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 47);
    ResidueSet a(n);
    if (rep % 2 == 0) {
      a = oracle::random_tile_candidate(rng, n);
    } else {
      const auto ds = divisors(n);
      const auto k = ds[rng() % ds.size()];
      a.insert(0);
      while (a.size() < k) a.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)));
    }
    const auto r = decide_tiles_ZN(a);
    const auto out = explore(a);
    if (r.verdict == Verdict::Tiles) {
      ++tiles_verdicts;
      check(!out.empty(), "Tiles verdict without complement: Z_" + std::to_string(n) + " {" + a.to_string() + "}");
    }
    if (r.verdict == Verdict::DoesNotTile) check(out.empty(), "DoesNotTile verdict with a complement: {" + a.to_string() + "}");
    for (const auto& b : out) {
      check(r.t1, "T1 fails on A = {" + a.to_string() + "}");
      check(decide_tiles_ZN(b).t1, "T1 fails on B = {" + b.to_string() + "}");
    }
  }
  check(tiles_verdicts >= 200, "too few Tiles verdicts drawn");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "cyclotomic identities up to 300", 5, criterion1},
      {2, "CM checker verdicts", 60, criterion2},
      {3, "partition filter for Z_144", 1, criterion3},
      {4, "Step 3 fixture {2,3,8,16}|{4,9}", 30, criterion4},
      {5, "published representatives", 1, criterion5},
      {6, "fill-out orbit counts", 300, criterion6},
      {7, "full classification of Z_144", 3600, criterion7},
      {8, "fill-out vs brute force", 600, criterion8},
      {9, "Z_48 and Z_72", 600, criterion9},
      {10, "lower-bound generator (7, 11)", 60, criterion10},
      {11, "local CM conditions vs fill-out", 600, criterion11},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Checker check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << c.limit_seconds << " s";
      check.failures.push_back(os.str());
    }
    const bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << "  (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    if (!ok) {
      std::cout << "  " << check.failures.front();
      if (check.failures.size() > 1) std::cout << " [+" << check.failures.size() - 1 << " more]";
    }
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
