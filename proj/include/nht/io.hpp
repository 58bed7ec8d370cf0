#pragma once

// JSON and CSV shapes shared by the CLI and any external consumer.
//
//   matrix:     {"order": n, "modulus": p, "entries": [row-major, n*n]}
//   report:     {"orthogonal": bool, "k": u, "failing_shift": {"shift": j, "value": c} | null}
//   group code: {"base": [..], "modulus": p, "terms": [[shift, weight], ..], "code": [..]}
//   record:     {"M", "pattern", "a", "b", "off_diagonal", "p", "k", "generator",
//                "discrepancies": [{"column", "printed", "computed"}], "extrapolated"}
//   scenario:   {"generator": [..], "modulus": p,
//                "users": [{"label", "shift", "weight"?}],
//                "frames": [{"packets"?: [{"to", "payload"}],
//                            "group"?: {"terms": [[shift, weight], ..], "payload"}}]}

#include <nht/circulant.hpp>
#include <nht/families.hpp>
#include <nht/portal.hpp>
#include <nht/search.hpp>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace nht::io {

using nlohmann::json;

inline json to_json(std::span<const u64> v) { return json(std::vector<u64>(v.begin(), v.end())); }

inline json to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix JSON shape is for square matrices");
  return {{"order", m.rows()}, {"modulus", m.modulus().value()}, {"entries", to_json(m.data())}};
}

inline Matrix matrix_from_json(const json& j) {
  const std::size_t n = j.at("order").get<std::size_t>();
  Matrix m(PrimeModulus(j.at("modulus").get<u64>()), n, n);
  const auto entries = j.at("entries").get<std::vector<u64>>();
  if (entries.size() != n * n) throw std::invalid_argument("matrix JSON: expected order^2 entries");
  for (std::size_t i = 0; i < entries.size(); ++i) m(i / n, i % n) = m.modulus().reduce(entries[i]);
  return m;
}

inline json to_json(const OrthogonalityReport& r) {
  json j = {{"orthogonal", r.is_orthogonal}, {"k", r.k.value()}, {"modulus", r.k.modulus().value()}};
  j["failing_shift"] = r.failing_shift ? json{{"shift", r.failing_shift->shift}, {"value", r.failing_shift->value}}
                                       : json(nullptr);
  return j;
}

inline json terms_to_json(const std::vector<GroupTerm>& terms) {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back({t.shift, t.weight});
  return arr;
}

inline std::vector<GroupTerm> terms_from_json(const json& j) {
  std::vector<GroupTerm> out;
  for (const auto& t : j) out.push_back({t.at(0).get<std::size_t>(), t.at(1).get<u64>()});
  return out;
}

inline json to_json(const GroupCode& gc) {
  return {{"base", to_json(gc.base.values())},
          {"modulus", gc.base.p()},
          {"terms", terms_to_json(gc.terms)},
          {"code", to_json(gc.code.values())}};
}

inline GroupCode group_code_from_json(const json& j) {
  Generator base(PrimeModulus(j.at("modulus").get<u64>()), j.at("base").get<std::vector<u64>>());
  auto gc = group_code(base, terms_from_json(j.at("terms")));
  if (j.contains("code") && j["code"] != to_json(gc.code.values()))
    throw std::invalid_argument("group code JSON: stored code does not match its terms");
  return gc;
}

inline json to_json(const FamilyRecord& r) {
  json d = json::array();
  for (const auto& x : r.discrepancies) d.push_back({{"column", x.column}, {"printed", x.printed}, {"computed", x.computed}});
  return {{"M", r.order},
          {"pattern", to_string(r.pattern)},
          {"a", r.a},
          {"b", r.b},
          {"off_diagonal", r.off_diagonal},
          {"p", r.p.value()},
          {"k", r.k.value()},
          {"generator", to_json(r.generator.values())},
          {"discrepancies", d},
          {"extrapolated", r.extrapolated()}};
}

inline std::string discrepancy_flag(const FamilyRecord& r) {
  std::string s;
  for (const auto& d : r.discrepancies) {
    if (!s.empty()) s += ';';
    s += d.column + ":printed=" + std::to_string(d.printed) + ":computed=" + std::to_string(d.computed);
  }
  return s;
}

inline constexpr std::string_view csv_header = "M,pattern,a,b,off_diagonal,p,k,generator,discrepancy_flag";

/// One CSV line; the generator column is space-separated.
inline std::string to_csv(const FamilyRecord& r) {
  std::ostringstream os;
  os << r.order << ',' << to_string(r.pattern) << ',' << r.a << ',' << r.b << ',' << r.off_diagonal << ','
     << r.p.value() << ',' << r.k.value() << ',' << nht::to_string(r.generator.values(), " ") << ','
     << discrepancy_flag(r);
  return os.str();
}

inline std::string to_jsonl(const std::vector<FamilyRecord>& recs) {
  std::string out;
  for (const auto& r : recs) out += to_json(r).dump() + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Portal scenarios

struct GroupBroadcast {
  std::vector<GroupTerm> terms;
  u64 payload;
};

struct ScenarioFrame {
  std::vector<Packet> packets;
  std::optional<GroupBroadcast> group;
};

struct Scenario {
  PortalNetwork network;
  std::vector<ScenarioFrame> frames;
};

inline Scenario scenario_from_json(const json& j) {
  Generator base(PrimeModulus(j.at("modulus").get<u64>()), j.at("generator").get<std::vector<u64>>());
  std::vector<PortalUser> users;
  for (const auto& u : j.at("users")) {
    PortalUser pu{u.at("label").get<std::string>(), u.at("shift").get<std::size_t>(), std::nullopt};
    if (u.contains("weight") && !u["weight"].is_null()) pu.weight = u["weight"].get<u64>();
    users.push_back(std::move(pu));
  }
  Scenario s{PortalNetwork(std::move(base), std::move(users)), {}};
  for (const auto& f : j.value("frames", json::array())) {
    ScenarioFrame frame;
    for (const auto& pk : f.value("packets", json::array()))
      frame.packets.push_back({pk.at("payload").get<u64>(), pk.at("to").get<std::string>()});
    if (f.contains("group"))
      frame.group = GroupBroadcast{terms_from_json(f["group"].at("terms")), f["group"].at("payload").get<u64>()};
    s.frames.push_back(std::move(frame));
  }
  return s;
}

/// Deterministic transcript: one line per (frame, user) in declaration order,
///   frame=<i> user=<label> channel=<unicast|group> value=<v>
/// Group members read with group_receive; a unicast packet to a group member
/// within the same frame is rejected.
inline std::vector<std::string> run_scenario(const Scenario& s) {
  const auto& net = s.network;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    const auto& f = s.frames[i];
    ChannelFrame frame = transmit(net, f.packets);
    std::optional<GroupCode> gc;
    if (f.group) {
      gc = group_code(net.base(), f.group->terms);
      for (const auto& pk : f.packets)
        if (gc->access_set.count(net.user(pk.recipient).shift))
          throw std::invalid_argument("frame " + std::to_string(i) + ": unicast to group member " + pk.recipient);
      frame = superpose(frame, broadcast_group(net, *gc, f.group->payload));
    }
    for (const auto& u : net.users()) {
      const bool member = gc && gc->access_set.count(u.shift);
      const u64 v = member ? group_receive(net, frame, *gc, u.label).value() : receive(net, frame, u.label).value();
      out.push_back("frame=" + std::to_string(i) + " user=" + u.label + " channel=" + (member ? "group" : "unicast") +
                    " value=" + std::to_string(v));
    }
  }
  return out;
}

}  // namespace nht::io
