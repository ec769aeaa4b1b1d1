#pragma once

// JSON and text renderings of classification and CM reports. JSON output is
// deterministic (fixed key order, canonical class order) and parses back to
// an equal report.

#include <sstream>
#include <string>

#include <json.hpp>

#include "tiling/classify.hpp"
#include "tiling/cm.hpp"
#include "tiling/errors.hpp"

namespace tiling {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json class_to_json(const TileClass& c) {
  Json members = Json::array();
  for (const auto& m : c.members) members.push_back(m.to_string());
  return Json{{"signature", c.sig.members()},
              {"cardinality", c.cardinality},
              {"orbit_count", c.members.size()},
              {"representative", c.members.empty() ? std::string() : c.members.front().to_string()},
              {"periodic", c.periodic},
              {"members", std::move(members)}};
}

inline TileClass class_from_json(const Json& j, std::int64_t n) {
  TileClass c;
  c.sig = DivisorSignature(n, j.at("signature").get<std::vector<std::int64_t>>());
  c.cardinality = j.at("cardinality").get<std::int64_t>();
  c.periodic = j.at("periodic").get<bool>();
  for (const auto& m : j.at("members")) c.members.push_back(parse_residue_set(n, m.get<std::string>()));
  if (j.at("orbit_count").get<std::size_t>() != c.members.size()) throw ParseError("orbit_count does not match members");
  return c;
}

}  // namespace detail

inline Json to_json(const ClassificationReport& r) {
  Json parts = Json::array();
  for (const auto& p : r.partitions) {
    Json a = Json::array(), b = Json::array();
    for (const auto& c : p.a_classes) a.push_back(detail::class_to_json(c));
    for (const auto& c : p.b_classes) b.push_back(detail::class_to_json(c));
    parts.push_back(Json{{"H", p.partition.h.elements()},
                         {"Hc", p.partition.hc.elements()},
                         {"status", to_string(p.status)},
                         {"a_classes", std::move(a)},
                         {"b_classes", std::move(b)},
                         {"coverage", p.coverage},
                         {"nonperiodic_pair_count", p.nonperiodic_pair_count},
                         {"note", p.note},
                         {"stats",
                          {{"enumerated_side", p.stats.enumerated_side},
                           {"base_tiles", p.stats.base_tiles},
                           {"lifts", p.stats.lifts},
                           {"classes", p.stats.classes},
                           {"discarded_step4", p.stats.discarded_step4},
                           {"without_complement", p.stats.without_complement}}}});
  }
  return Json{{"n", r.n}, {"partitions", std::move(parts)}};
}

inline std::string render_json(const ClassificationReport& r) { return to_json(r).dump(2) + "\n"; }

inline ClassificationReport parse_report_json(const std::string& text) {
  try {
    const auto j = Json::parse(text);
    ClassificationReport r;
    r.n = j.at("n").get<std::int64_t>();
    for (const auto& pj : j.at("partitions")) {
      PartitionResult p;
      p.partition = Partition(PrimePowerSet(pj.at("H").get<std::vector<std::int64_t>>()),
                              PrimePowerSet(pj.at("Hc").get<std::vector<std::int64_t>>()));
      p.status = partition_status_from_string(pj.at("status").get<std::string>());
      for (const auto& c : pj.at("a_classes")) p.a_classes.push_back(detail::class_from_json(c, r.n));
      for (const auto& c : pj.at("b_classes")) p.b_classes.push_back(detail::class_from_json(c, r.n));
      p.coverage = pj.at("coverage").get<std::vector<std::vector<bool>>>();
      p.nonperiodic_pair_count = pj.at("nonperiodic_pair_count").get<std::int64_t>();
      p.note = pj.value("note", "");
      if (pj.contains("stats")) {
        const auto& s = pj.at("stats");
        p.stats = {s.at("enumerated_side").get<std::string>(), s.at("base_tiles").get<std::int64_t>(),
                   s.at("lifts").get<std::int64_t>(),          s.at("classes").get<std::int64_t>(),
                   s.at("discarded_step4").get<std::int64_t>(), s.at("without_complement").get<std::int64_t>()};
      }
      if (p.coverage.size() != p.a_classes.size()) throw ParseError("coverage has the wrong number of rows");
      for (const auto& row : p.coverage)
        if (row.size() != p.b_classes.size()) throw ParseError("coverage has the wrong number of columns");
      r.partitions.push_back(std::move(p));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
}

/// Per partition: status, then each class with its signature, orbit count and
/// a representative, then which classes tile with which.
inline std::string render_text(const ClassificationReport& r) {
  std::ostringstream os;
  std::int64_t classified = 0, pairs = 0;
  os << "Z_" << r.n << ": " << r.partitions.size() << " partitions\n";
  for (const auto& p : r.partitions) {
    os << "\n{" << p.partition.h.to_string() << "} | {" << p.partition.hc.to_string() << "}: " << to_string(p.status) << "\n";
    if (!p.note.empty()) os << "  " << p.note << "\n";
    if (p.status != PartitionStatus::Classified) continue;
    ++classified;
    pairs += p.nonperiodic_pair_count;
    auto side = [&os](char tag, const std::vector<TileClass>& cs) {
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        os << "  " << tag << i + 1 << ": |" << tag << "| = " << c.cardinality << ", " << c.members.size()
           << " orbits, Phi_d for d in " << c.sig.to_string() << "\n";
        os << "      e.g. {" << c.members.front().to_string() << "}\n";
      }
    };
    side('A', p.a_classes);
    side('B', p.b_classes);
    for (std::size_t i = 0; i < p.a_classes.size(); ++i)
      for (std::size_t j = 0; j < p.b_classes.size(); ++j)
        if (p.coverage[i][j]) os << "  A" << i + 1 << " tiles with B" << j + 1 << "\n";
    os << "  non-periodic pairs: " << p.nonperiodic_pair_count << "\n";
  }
  os << "\n" << classified << " partitions with non-periodic tilings, " << pairs << " pairs in total\n";
  return os.str();
}

inline Json to_json(const CmReport& r) {
  Json counts = Json::object();
  for (const auto& pc : r.prime_counts) counts[std::to_string(pc.prime)] = pc.count;
  Json j{{"spectrum", r.spectrum.elements()}, {"prime_counts", std::move(counts)}, {"cardinality", r.cardinality},
         {"diameter", r.diameter}};
  if (r.modulus) j["modulus"] = *r.modulus;
  j["t1"] = r.t1;
  j["t2"] = r.t2;
  j["pruned"] = r.pruned;
  j["verdict"] = to_string(r.verdict);
  return j;
}

}  // namespace tiling
