#pragma once

#include <nht/io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace nht::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

inline const CLI::Validator prime_validator(
    [](std::string& s) -> std::string {
      try {
        if (!is_prime(std::stoull(s))) return "modulus " + s + " is not prime";
      } catch (const std::exception&) {
        return "modulus must be a decimal integer";
      }
      return {};
    },
    "PRIME", "prime");

// "lo..hi" or a single value.
inline Range parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const u64 v = std::stoull(s);
      return {v, v};
    }
    return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected N or LO..HI, got '" + s + "'");
  }
}

inline std::vector<GroupTerm> parse_terms(const std::vector<std::string>& items) {
  std::vector<GroupTerm> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      out.push_back({std::stoull(item.substr(0, colon)), std::stoull(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--terms", "expected shift:weight, got '" + item + "'");
    }
  }
  return out;
}

inline std::string csv(std::span<const u64> v) { return nht::to_string(v, ","); }

}  // namespace detail

/// Parses argv and runs one subcommand. Exit status: 0 success, 1 domain
/// error, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal residue sequences from NHT circulant matrices", "nhtseq"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  bool as_json = false;
  std::vector<u64> gen;
  u64 mod = 0;

  auto add_generator = [&](CLI::App* sub) {
    sub->add_option("--gen", gen, "generator entries, comma separated")->required()->delimiter(',');
    sub->add_option("--mod", mod, "prime modulus")->required()->check(detail::prime_validator);
    sub->add_flag("--json", as_json, "emit JSON");
  };

  auto* verify = app.add_subcommand("verify", "check R R^T = k I for a generator");
  add_generator(verify);

  int table_id = 1;
  auto* table = app.add_subcommand("table", "regenerate a family table with discrepancy flags");
  table->add_option("--id", table_id, "table number")->required()->check(CLI::IsMember({1, 2, 3}));
  table->add_flag("--json", as_json, "emit JSON");

  std::size_t order = 0;
  SearchOptions search_opts;
  auto* search = app.add_subcommand("search", "exhaustive search for orthogonal classes");
  search->add_option("--mod", mod, "prime modulus")->required()->check(detail::prime_validator);
  search->add_option("--m", order, "sequence length")->required()->check(CLI::Range(2, 64));
  search->add_option("--budget", search_opts.budget, "maximum p^M candidates");
  search->add_option("--threads", search_opts.threads, "worker threads")->check(CLI::Range(1, 256));
  search->add_flag("--json", as_json, "emit JSON");

  std::string a_range, b_range, m_range, pattern = "two", format = "human";
  u64 max_factor = std::numeric_limits<u64>::max();
  auto* family = app.add_subcommand("family", "two-value or three-value family records");
  family->add_option("--a", a_range, "a or LO..HI")->required();
  family->add_option("--b", b_range, "b or LO..HI")->required();
  family->add_option("--m", m_range, "M or LO..HI")->required();
  family->add_option("--pattern", pattern, "two | three | both")->check(CLI::IsMember({"two", "three", "both"}));
  family->add_option("--max-factor", max_factor, "skip off-diagonal terms above this");
  family->add_option("--format", format, "human | csv | jsonl")->check(CLI::IsMember({"human", "csv", "jsonl"}));
  family->add_flag("--json", as_json, "same as --format jsonl");

  std::vector<std::string> term_items;
  auto* groupcode = app.add_subcommand("groupcode", "weighted group code and its access checks");
  add_generator(groupcode);
  groupcode->add_option("--terms", term_items, "shift:weight, comma separated")->required()->delimiter(',');

  std::string scenario_path;
  auto* simulate = app.add_subcommand("simulate", "run a portal scenario file");
  simulate->add_option("--scenario", scenario_path, "scenario JSON")->required()->check(CLI::ExistingFile);
  simulate->add_flag("--json", as_json, "emit JSON");

  std::vector<u64> block;
  auto* transform = app.add_subcommand("transform", "G = N F and its inverse");
  add_generator(transform);
  transform->add_option("--in", block, "block F of length 2M, comma separated")->required()->delimiter(',');

  std::vector<GroupTerm> terms;
  SweepConfig sweep_cfg;
  try {
    app.parse(argc, argv);
    if (*groupcode) terms = detail::parse_terms(term_items);
    if (*family) {
      sweep_cfg.a = detail::parse_range(a_range);
      sweep_cfg.b = detail::parse_range(b_range);
      sweep_cfg.order = detail::parse_range(m_range);
      sweep_cfg.max_factor = max_factor;
      sweep_cfg.patterns = pattern == "two"     ? PatternSelector::TwoValue
                           : pattern == "three" ? PatternSelector::ThreeValue
                                                : PatternSelector::Both;
      try {
        sweep_cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("family", e.what());
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*verify) {
      Generator g(PrimeModulus(mod), gen);
      const auto rep = verify_orthogonal(g);
      if (as_json)
        out << io::to_json(rep).dump() << '\n';
      else
        out << rep.describe() << '\n';
      return rep.is_orthogonal ? kOk : kDomainError;
    }

    if (*table) {
      const auto recs = reproduce_table(table_id);
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : recs) arr.push_back(io::to_json(r));
        out << arr.dump() << '\n';
        return kOk;
      }
      out << (table_id == 3 ? "a, b, 2ab+5a^2, p, k\n" : "b, p, k\n");
      for (const auto& r : recs) {
        if (table_id == 3) out << r.a << ", " << r.b << ", " << r.off_diagonal << ", ";
        else out << r.b << ", ";
        out << r.p.value() << ", " << r.k.value();
        for (const auto& d : r.discrepancies)
          out << "  [" << d.column << ": printed " << d.printed << ", computed " << d.computed << "]";
        out << '\n';
      }
      return kOk;
    }

    if (*search) {
      const PrimeModulus m(mod);
      const auto classes = exhaustive_search(m, order, search_opts);
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& g : classes)
          arr.push_back({{"generator", io::to_json(g.values())}, {"k", verify_orthogonal(g).k.value()}});
        out << nlohmann::json{{"modulus", mod}, {"M", order}, {"extrapolated", order % 2 == 0}, {"classes", arr}}.dump()
            << '\n';
        return kOk;
      }
      out << classes.size() << " orthogonal classes mod " << mod << " at M=" << order
          << (order % 2 == 0 ? " (even M: extrapolation)" : "") << '\n';
      for (const auto& g : classes) out << detail::csv(g.values()) << "  k=" << verify_orthogonal(g).k.value() << '\n';
      return kOk;
    }

    if (*family) {
      const auto recs = sweep(sweep_cfg);
      if (as_json || format == "jsonl") {
        out << io::to_jsonl(recs);
      } else if (format == "csv") {
        out << io::csv_header << '\n';
        for (const auto& r : recs) out << io::to_csv(r) << '\n';
      } else {
        for (const auto& r : recs)
          out << "M=" << r.order << ' ' << to_string(r.pattern) << " a=" << r.a << " b=" << r.b
              << " off_diagonal=" << r.off_diagonal << " p=" << r.p.value() << " k=" << r.k.value()
              << " generator=" << detail::csv(r.generator.values()) << (r.extrapolated() ? " (extrapolated)" : "")
              << '\n';
      }
      return kOk;
    }

    if (*groupcode) {
      Generator g(PrimeModulus(mod), gen);
      const auto gc = group_code(g, terms);
      if (as_json) {
        auto j = io::to_json(gc);
        nlohmann::json checks = nlohmann::json::array();
        for (std::size_t l = 0; l < g.order(); ++l)
          checks.push_back({{"shift", l},
                            {"member", gc.access_set.count(l) > 0},
                            {"dot", dot(gc.code, shift(g, static_cast<std::int64_t>(l))).value()}});
        j["access"] = checks;
        out << j.dump() << '\n';
        return kOk;
      }
      out << "code " << detail::csv(gc.code.values()) << '\n';
      for (std::size_t l = 0; l < g.order(); ++l) {
        const auto key = shift(g, static_cast<std::int64_t>(l));
        out << "shift " << l << " key " << detail::csv(key.values()) << " dot "
            << dot(gc.code, key).value() << (gc.access_set.count(l) ? " member" : " excluded") << '\n';
      }
      return kOk;
    }

    if (*simulate) {
      std::ifstream in(scenario_path);
      const auto scenario = io::scenario_from_json(nlohmann::json::parse(in));
      const auto transcript = io::run_scenario(scenario);
      if (as_json)
        out << nlohmann::json(transcript).dump() << '\n';
      else
        for (const auto& line : transcript) out << line << '\n';
      return kOk;
    }

    if (*transform) {
      Generator g(PrimeModulus(mod), gen);
      const ResidueVector f(g.modulus(), block);
      const auto encoded = nht_transform(f, g);
      const auto recovered = nht_inverse(encoded, g);
      if (as_json) {
        out << nlohmann::json{{"modulus", mod},
                              {"input", io::to_json(f.values())},
                              {"transformed", io::to_json(encoded.values())},
                              {"recovered", io::to_json(recovered.values())},
                              {"matrix", io::to_json(NhtMatrix(g).matrix())}}
                   .dump()
            << '\n';
      } else {
        out << "G = " << detail::csv(encoded.values()) << '\n';
        out << "F = " << detail::csv(recovered.values()) << '\n';
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace nht::cli
