#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apol/ap_atlas.hpp"
#include "apol/classifier.hpp"
#include "apol/report.hpp"

namespace apol::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_usage = 2;

namespace detail {

//! Worker count for the parallel engines; APOL_WORKERS overrides the
//! default of all available cores.
inline int workers_from_env(std::ostream& err) {
  const char* value = std::getenv("APOL_WORKERS");
  if (!value || !*value) return 0;
  char* end = nullptr;
  long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed < 1) {
    err << "warning: ignoring invalid APOL_WORKERS value `" << value << "`\n";
    return 0;
  }
  return static_cast<int>(parsed);
}

inline std::vector<uint8_t> parse_bit_string(const std::string& text) {
  std::vector<uint8_t> out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch == '0')
      out.push_back(0);
    else if (ch == '1')
      out.push_back(1);
    else
      throw input_error("tuples must be 0/1 strings, got `" + text + "`");
  }
  return out;
}

inline analogy_model model_from_registry(const relation_registry& registry,
                                         const std::string& name) {
  const relation& rel = registry.at(name);
  if (rel.arity() != 4)
    throw input_error("relation `" + name + "` is not 4-ary and cannot act as an analogy model");
  return analogy_model(name, rel);
}

inline std::string witness_text(const ap_witness& w) {
  auto bits = [](const std::vector<uint8_t>& v) {
    std::string s;
    for (uint8_t b : v) s += b ? '1' : '0';
    return s;
  };
  std::ostringstream out;
  out << "a=" << bits(w.a) << " b=" << bits(w.b) << " c=" << bits(w.c) << " d=" << bits(w.d)
      << " image=(" << int(w.image[0]) << "," << int(w.image[1]) << "," << int(w.image[2]) << ","
      << int(w.image[3]) << ")";
  return out.str();
}

}  // namespace detail

/*! \brief Runs one CLI invocation; `args` excludes the program name.
 *
 * Exit status: 0 on success/pass, 1 on verification failure, 2 on usage
 * errors.  All reports go to `out`; diagnostics go to `err`.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"analogy-preserving Boolean classifier engine"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string registry_path;
  app.add_flag("--json", as_json, "emit structured JSON instead of human-readable text");
  app.add_option("--registry", registry_path,
                 "extra named relations, one `name = row;row;row;row` per line");

  // relations
  auto* cmd_relations = app.add_subcommand("relations", "list or print named relations");
  std::vector<std::string> relation_names;
  cmd_relations->add_option("names", relation_names, "relation names to print (default: all)");

  // check-postulates
  auto* cmd_postulates =
      app.add_subcommand("check-postulates", "audit the proportion postulates of a model");
  std::string postulates_name;
  cmd_postulates->add_option("name", postulates_name, "analogy model name")->required();

  // pol
  auto* cmd_pol = app.add_subcommand("pol", "enumerate polymorphisms of an analogical constraint");
  std::string pol_src, pol_dst;
  int pol_max_arity = 2;
  cmd_pol->add_option("--src", pol_src, "source model name")->required();
  cmd_pol->add_option("--dst", pol_dst, "target model name")->required();
  cmd_pol->add_option("--max-arity", pol_max_arity, "enumerate arities 1..N (N <= 4)");

  // verify-table
  auto* cmd_verify = app.add_subcommand(
      "verify-table", "check every built-in model pair against its expected class");
  int verify_max_arity = 3;
  cmd_verify->add_option("--max-arity", verify_max_arity, "check arities 1..N (N <= 4)");

  // ap-check
  auto* cmd_ap = app.add_subcommand("ap-check", "test one function for analogy preservation");
  std::string ap_fn, ap_src, ap_dst;
  cmd_ap->add_option("--fn", ap_fn, "function as `arity:hex`")->required();
  cmd_ap->add_option("--src", ap_src, "source model name")->required();
  cmd_ap->add_option("--dst", ap_dst, "target model name")->required();

  // error-rate
  auto* cmd_rate = app.add_subcommand("error-rate", "measure the inference error rate of a function");
  std::string rate_fn, rate_src, rate_dst;
  uint64_t rate_samples = 0;
  uint64_t rate_seed = 0;
  cmd_rate->add_option("--fn", rate_fn, "function as `arity:hex`")->required();
  cmd_rate->add_option("--src", rate_src, "source model name")->required();
  cmd_rate->add_option("--dst", rate_dst, "target model name")->required();
  cmd_rate->add_option("--sample", rate_samples, "draw N seeded selections instead of exhausting");
  cmd_rate->add_option("--seed", rate_seed, "seed for sampled mode");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "solve a : b :: c : x componentwise");
  std::string solve_name, solve_a, solve_b, solve_c;
  cmd_solve->add_option("name", solve_name, "analogy model name")->required();
  cmd_solve->add_option("a", solve_a, "first tuple (0/1 string)")->required();
  cmd_solve->add_option("b", solve_b, "second tuple")->required();
  cmd_solve->add_option("c", solve_c, "third tuple")->required();

  // classify
  auto* cmd_classify =
      app.add_subcommand("classify", "predict unknown labels of a dataset by analogical inference");
  std::string classify_path, classify_src, classify_dst, classify_strategy = "majority";
  cmd_classify->add_option("dataset", classify_path, "CSV dataset path")->required();
  cmd_classify->add_option("--src", classify_src, "source model name")->required();
  cmd_classify->add_option("--dst", classify_dst, "target model name")->required();
  cmd_classify->add_option("--strategy", classify_strategy, "first | majority");

  std::vector<const char*> argv;
  argv.push_back("apol");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return exit_usage;
  }

  int workers = detail::workers_from_env(err);

  try {
    relation_registry registry = default_registry();
    if (!registry_path.empty()) registry.load_file(registry_path);

    if (*cmd_relations) {
      std::vector<std::string> names =
          relation_names.empty() ? registry.names() : relation_names;
      if (as_json) {
        json doc;
        for (const auto& name : names) {
          const relation& r = registry.at(name);
          doc[name] = {{"arity", r.arity()},
                       {"tuples", r.tuples()},
                       {"matrix", format_relation(r)}};
        }
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& name : names) {
          const relation& r = registry.at(name);
          out << name << " (arity " << r.arity() << ", " << r.size() << " tuples)\n"
              << format_relation(r);
        }
      }
      return exit_ok;
    }

    if (*cmd_postulates) {
      analogy_model model = detail::model_from_registry(registry, postulates_name);
      postulate_report report = check_postulates(model);
      if (as_json) {
        json doc{{"model", model.name}, {"postulates", to_json(report)}};
        out << doc.dump(2) << "\n";
      } else {
        out << model.name << " postulate audit\n";
        for (int p = 0; p < postulate_count; ++p) {
          const auto& check = report.checks[static_cast<size_t>(p)];
          out << "  " << postulate_name(static_cast<postulate>(p)) << ": ";
          if (check.holds) {
            out << "holds\n";
          } else {
            out << "FAILS (witness ";
            for (uint8_t b : check.witness) out << int(b);
            out << ")\n";
          }
        }
      }
      return exit_ok;
    }

    if (*cmd_pol) {
      analogy_model src = detail::model_from_registry(registry, pol_src);
      analogy_model dst = detail::model_from_registry(registry, pol_dst);
      constraint c = analogical_constraint(src, dst);
      json docs = json::array();
      for (int n = 1; n <= pol_max_arity; ++n) {
        pol_result result = pol(std::span<const constraint>(&c, 1), n, workers);
        if (as_json) {
          docs.push_back(to_json(result, src.name, dst.name));
        } else {
          out << "Pol(" << src.name << ", " << dst.name << "') arity " << n << ": "
              << result.members.size() << " members:";
          for (const auto& f : result.members) out << " " << f.serialize();
          out << "\n";
        }
      }
      if (as_json) out << docs.dump(2) << "\n";
      return exit_ok;
    }

    if (*cmd_verify) {
      atlas_verdict verdict = verify_ap_atlas(verify_max_arity, workers);
      if (as_json) {
        out << to_json(verdict).dump(2) << "\n";
      } else {
        out << "expected analogy-preservation classes, arities 1.." << verify_max_arity << "\n";
        auto pad = [](std::string text) {
          text.resize(10, ' ');
          return text;
        };
        out << "    " << pad("R1") << pad("R2") << pad("R3") << pad("R4") << pad("R5") << "\n";
        for (int i = 0; i < 5; ++i) {
          out << "R" << (i + 1) << "  ";
          for (int j = 0; j < 5; ++j) {
            bool ok = true;
            for (int n = 1; n <= verify_max_arity; ++n)
              ok = ok && verdict.find(i, j, n)->match;
            std::string label = std::string(family_name(expected_ap_class(i, j)));
            label += ok ? "" : "!";
            out << pad(label);
          }
          out << "\n";
        }
        out << (verdict.pass() ? "PASS" : "FAIL") << " (" << verdict.seconds << " s)\n";
        if (!verdict.pass()) {
          for (const auto& cell : verdict.cells) {
            if (cell.match) continue;
            out << "  mismatch at (R" << (cell.src_index + 1) << ", R" << (cell.dst_index + 1)
                << ") arity " << cell.arity << ": " << cell.member_count << " members vs "
                << cell.expected_count << " expected\n";
          }
        }
      }
      return verdict.pass() ? exit_ok : exit_verification_failure;
    }

    if (*cmd_ap) {
      analogy_model src = detail::model_from_registry(registry, ap_src);
      analogy_model dst = detail::model_from_registry(registry, ap_dst);
      truth_table f = truth_table::parse(ap_fn);
      ap_check_result result = ap_check(f, src, dst);
      if (as_json) {
        json doc{{"function", f.serialize()},
                 {"src", src.name},
                 {"dst", dst.name},
                 {"preserved", result.preserved}};
        if (result.witness) doc["witness"] = to_json(*result.witness);
        out << doc.dump(2) << "\n";
      } else if (result.preserved) {
        out << "PASS: " << f.serialize() << " preserves (" << src.name << ", " << dst.name
            << "')\n";
      } else {
        out << "FAIL: " << f.serialize() << " violates (" << src.name << ", " << dst.name
            << "'): " << detail::witness_text(*result.witness) << "\n";
      }
      return result.preserved ? exit_ok : exit_verification_failure;
    }

    if (*cmd_rate) {
      analogy_model src = detail::model_from_registry(registry, rate_src);
      analogy_model dst = detail::model_from_registry(registry, rate_dst);
      truth_table f = truth_table::parse(rate_fn);
      std::optional<sampling> mode;
      if (cmd_rate->count("--sample")) mode = sampling{rate_seed, rate_samples};
      error_report report = error_rate(f, src, dst, mode, workers);
      if (as_json) {
        out << to_json(report).dump(2) << "\n";
      } else {
        out << report.function << " under (" << report.src << ", " << report.dst << "): ";
        if (report.degenerate)
          out << "degenerate (no solvable selection)";
        else
          out << report.violations << "/" << report.solvable << " = " << report.rate();
        out << (report.exact ? " [exact]" : " [sampled]") << ", epsilon " << report.epsilon
            << "\n";
        if (report.first_violation)
          out << "  first violation: " << detail::witness_text(*report.first_violation) << "\n";
      }
      return exit_ok;
    }

    if (*cmd_solve) {
      analogy_model model = detail::model_from_registry(registry, solve_name);
      auto a = detail::parse_bit_string(solve_a);
      auto b = detail::parse_bit_string(solve_b);
      auto c = detail::parse_bit_string(solve_c);
      vector_solution_set sols = solve_vector(model, a, b, c);
      auto materialized = sols.materialize();
      if (as_json) {
        json doc{{"model", model.name}, {"count", sols.count()}};
        if (materialized) {
          json list = json::array();
          for (const auto& tuple : *materialized) {
            std::string s;
            for (uint8_t bit : tuple) s += bit ? '1' : '0';
            list.push_back(s);
          }
          doc["solutions"] = list;
        } else {
          json masks = json::array();
          for (uint8_t m : sols.component_masks)
            masks.push_back(m == 3 ? "01" : (m == 2 ? "1" : (m == 1 ? "0" : "")));
          doc["component_masks"] = masks;
        }
        out << doc.dump(2) << "\n";
      } else if (!materialized) {
        out << "(" << sols.count() << " solutions; componentwise sets:";
        for (uint8_t m : sols.component_masks)
          out << " {" << ((m & 1) ? "0" : "") << ((m & 2) ? "1" : "") << "}";
        out << ")\n";
      } else if (materialized->empty()) {
        out << "(no solution)\n";
      } else {
        for (const auto& tuple : *materialized) {
          std::string s;
          for (uint8_t bit : tuple) s += bit ? '1' : '0';
          out << s << "\n";
        }
      }
      return exit_ok;
    }

    if (*cmd_classify) {
      analogy_model src = detail::model_from_registry(registry, classify_src);
      analogy_model dst = detail::model_from_registry(registry, classify_dst);
      vote_strategy strategy;
      if (classify_strategy == "first")
        strategy = vote_strategy::first_hit;
      else if (classify_strategy == "majority")
        strategy = vote_strategy::majority;
      else
        throw input_error("--strategy must be `first` or `majority`");

      std::ifstream in(classify_path);
      if (!in) throw input_error("cannot open dataset `" + classify_path + "`");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      dataset ds = load_dataset(buffer.str());
      if (ds.known_indices().empty())
        throw input_error("dataset has no known-label records to infer from");

      json docs = json::array();
      for (size_t i = 0; i < ds.records.size(); ++i) {
        const auto& rec = ds.records[i];
        if (rec.known) continue;
        prediction p = aip_predict(ds, rec.attributes, src, dst, strategy);
        std::string attrs;
        for (uint8_t bit : rec.attributes) attrs += bit ? '1' : '0';
        if (as_json) {
          json doc = to_json(p);
          doc["record"] = i;
          doc["attributes"] = attrs;
          docs.push_back(doc);
        } else {
          out << "record " << i << " [" << attrs << "]: ";
          switch (p.kind) {
            case prediction::outcome::label: out << "label " << int(p.label); break;
            case prediction::outcome::abstain: out << "abstain"; break;
            case prediction::outcome::tie: out << "tie"; break;
          }
          out << " (votes " << p.votes[0] << ":" << p.votes[1] << ", triples "
              << p.applicable_triples << ")\n";
        }
      }
      if (as_json) out << docs.dump(2) << "\n";
      return exit_ok;
    }
  } catch (const capability_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  err << "error: no subcommand selected\n" << app.help();
  return exit_usage;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace apol::cli
