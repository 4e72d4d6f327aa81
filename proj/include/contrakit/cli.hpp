#pragma once

#include "acceptance.hpp"
#include "atom_properties.hpp"
#include "duality.hpp"
#include "envelope.hpp"
#include "functors.hpp"
#include "lab.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <sstream>

namespace contrakit {

inline constexpr const char *kToolVersion = "0.1.0";

namespace cli {

inline Int json_int(const json &v, const std::string &path) {
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    static const std::regex re(R"(-?\d+)");
    if (std::regex_match(s, re)) return Int(s);
  }
  throw SchemaError("expected an integer", path);
}

inline Int parse_int_arg(const std::string &s, const std::string &name) {
  static const std::regex re(R"(-?\d+)");
  if (!std::regex_match(s, re)) throw SchemaError("expected an integer, got '" + s + "'", name);
  return Int(s);
}

/// Module JSON: {"presentation": [[...], ...], "generators": g} or
/// {"invariants": {"rank": r, "torsion": [d, ...]}}.
inline FPModule parse_module(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError("malformed module JSON: " + std::string(e.what()), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw SchemaError("module must be a JSON object", "$");
  const bool has_p = j.contains("presentation"), has_i = j.contains("invariants");
  if (has_p == has_i) throw SchemaError("exactly one of presentation or invariants is required", "$");
  if (has_i) {
    const json &inv = j["invariants"];
    if (!inv.is_object()) throw SchemaError("expected an object", "invariants");
    Int rank = inv.contains("rank") ? json_int(inv["rank"], "invariants.rank") : Int(0);
    if (rank < 0 || rank > 64) throw SchemaError("rank must lie in 0..64", "invariants.rank");
    IntVec t;
    if (inv.contains("torsion")) {
      if (!inv["torsion"].is_array()) throw SchemaError("expected an array", "invariants.torsion");
      for (std::size_t i = 0; i < inv["torsion"].size(); ++i) {
        const std::string path = "invariants.torsion[" + std::to_string(i) + "]";
        Int d = json_int(inv["torsion"][i], path);
        if (d < 2) throw SchemaError("torsion invariants must be >= 2", path);
        t.push_back(d);
      }
    }
    return FPModule::from_invariants(static_cast<std::size_t>(rank), t);
  }
  const json &p = j["presentation"];
  if (!p.is_array()) throw SchemaError("expected an array of rows", "presentation");
  std::size_t cols = 0;
  if (j.contains("generators")) {
    Int g = json_int(j["generators"], "generators");
    if (g < 0 || g > 64) throw SchemaError("generators must lie in 0..64", "generators");
    cols = static_cast<std::size_t>(g);
  } else if (!p.empty()) {
    if (!p[0].is_array()) throw SchemaError("expected an array", "presentation[0]");
    cols = p[0].size();
  }
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string rp = "presentation[" + std::to_string(i) + "]";
    if (!p[i].is_array()) throw SchemaError("expected an array", rp);
    if (p[i].size() != cols) throw SchemaError("row length " + std::to_string(p[i].size()) + " != " + std::to_string(cols), rp);
    IntVec row;
    for (std::size_t k = 0; k < cols; ++k) row.push_back(json_int(p[i][k], rp + "[" + std::to_string(k) + "]"));
    rows.push_back(row);
  }
  return FPModule(IntMatrix::from_rows(rows, cols));
}

/// Indented key: value rendering of a JSON report.
inline void render_text(std::ostream &os, const json &j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_array = [](const json &a) {
    for (auto &x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (auto &[k, v] : j.items()) {
      if (v.is_object() && !v.empty()) {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      } else if (v.is_array() && !scalar_array(v)) {
        os << pad << k << ":\n";
        for (auto &x : v) {
          os << pad << "  -\n";
          render_text(os, x, indent + 4);
        }
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Outcome {
  json report;
  int exit_code = 0;
};

inline json error_json(const std::string &type, const std::exception &e) {
  json err = {{"type", type}, {"message", e.what()}};
  if (auto *pe = dynamic_cast<const ParseError *>(&e)) err["position"] = pe->position;
  if (auto *se = dynamic_cast<const SchemaError *>(&e)) err["field"] = se->field;
  return err;
}

} // namespace cli

/// Parses argv, runs the command and returns the report with the exit code:
/// 0 success, 1 a failed check or module error, 2 a usage error.
inline cli::Outcome run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  using namespace cli;
  CLI::App app{"contrakit: torsion, completion and contramodule computations over Z"};
  app.require_subcommand(1);
  app.fallthrough(); // subcommands inherit this, so --format works anywhere
  std::string format = "json";
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string module_text, atoms_text, s_text, name, scenario, kind, scale = "desk";
  std::vector<std::string> gens_text;
  std::vector<int> only;
  LabParams lp;
  std::string p_text = "2";

  auto *functor = app.add_subcommand("functor", "gamma, lambda, delta, delta-multi or cech");
  functor->add_option("kind", kind)->required()->check(CLI::IsMember({"gamma", "lambda", "delta", "delta-multi", "cech"}));
  functor->add_option("--s", s_text);
  functor->add_option("--gens", gens_text)->delimiter(',');
  functor->add_option("--module", module_text);

  auto *check = app.add_subcommand("check", "property flags at s");
  check->add_option("--s", s_text)->required();
  check->add_option("--module", module_text);
  check->add_option("--atoms", atoms_text);

  auto *envelope = app.add_subcommand("envelope", "cotorsion envelope");
  envelope->add_option("--module", module_text)->required();

  auto *cover = app.add_subcommand("cover", "flat cover corpus entry");
  cover->add_option("--name", name)->required();

  auto *dual = app.add_subcommand("dual", "Matlis dual of a finite p-group");
  dual->add_option("--module", module_text)->required();

  auto *classify_cmd = app.add_subcommand("classify", "normal form of an atom expression");
  classify_cmd->add_option("--atoms", atoms_text)->required();

  auto *lab = app.add_subcommand("lab", "padlab experiment");
  lab->add_option("scenario", scenario)->required()->check(CLI::IsMember(lab_scenarios()));
  lab->add_option("--p", p_text);
  lab->add_option("--precision,--N", lp.precision);
  lab->add_option("--M", lp.M);
  lab->add_option("--K", lp.K);
  lab->add_option("--seed", lp.seed);
  lab->add_option("--trials", lp.trials);
  std::vector<std::string> kv;
  lab->add_option("params", kv, "key=value settings, e.g. p=2 N=16 M=12");

  std::uint64_t vseed = 0;
  auto *verify = app.add_subcommand("verify", "acceptance criteria");
  verify->add_option("--scale", scale)->check(CLI::IsMember({"smoke", "desk"}));
  verify->add_option("--seed", vseed);
  verify->add_option("--only", only);

  Outcome o;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    o.exit_code = 0;
    return o;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    o.exit_code = 2;
    o.report = {{"error", {{"type", "UsageError"}, {"message", e.what()}}}};
    return o;
  }

  const auto t0 = std::chrono::steady_clock::now();
  json request = {{"command", app.get_subcommands().front()->get_name()}};
  json result = json::object(), certs = json::object();
  bool pass = true;
  std::uint64_t seed = 0;
  json criterion_seconds;
  try {
    auto need_module = [&] {
      if (module_text.empty()) throw SchemaError("a module is required", "--module");
      FPModule m = parse_module(module_text);
      request["module"] = module_json(m);
      return m;
    };
    auto need_s = [&] {
      if (s_text.empty()) throw SchemaError("s is required", "--s");
      Int s = parse_int_arg(s_text, "--s");
      request["s"] = jint(s);
      return s;
    };
    auto need_gens = [&] {
      if (gens_text.empty()) throw SchemaError("at least one generator is required", "--gens");
      std::vector<Int> g;
      for (auto &x : gens_text) g.push_back(parse_int_arg(x, "--gens"));
      request["gens"] = jvec(g);
      return g;
    };

    if (functor->parsed()) {
      request["functor"] = kind;
      if (kind == "gamma") {
        FPModule m = need_module();
        Int s = need_s();
        GammaResult g = gamma_s(m, s);
        result = {{"output", module_json(g.module)}, {"output_atoms", fp_atoms(g.module).to_string()}};
        certs = {{"level", g.level},
                 {"via_stabilization", g.via_stabilization.to_string()},
                 {"via_telescope", g.via_telescope.to_string()},
                 {"via_tor", g.via_tor.to_string()},
                 {"inclusion", jmatrix(g.inclusion.matrix())}};
        pass = g.agree;
      } else if (kind == "lambda") {
        FPModule m = need_module();
        Int s = need_s();
        result = {{"output_atoms", lambda_s(m, s).to_string()}};
      } else if (kind == "delta") {
        FPModule m = need_module();
        Int s = need_s();
        DeltaResult d = delta_s(m, s);
        result = {{"output_atoms", d.atoms.to_string()}, {"adjunction", d.adjunction}};
        certs = d.certificates;
        certs["lim1"] = d.lim1.lim1.to_string();
        certs["lim1_certified"] = d.lim1.certified;
        for (auto key : {"lim1_zero", "delta_equals_lambda"})
          if (certs.contains(key) && certs[key].is_boolean()) pass = pass && certs[key].get<bool>();
      } else if (kind == "delta-multi") {
        FPModule m = need_module();
        auto g = need_gens();
        DeltaMultiResult d = delta_multi(m, g);
        result = {{"output_atoms", d.atoms.to_string()}};
        certs = d.certificates;
        certs["order_independent"] = d.order_independent;
        certs["matches_ideal_generator"] = d.matches_gcd;
        pass = d.order_independent && d.matches_gcd;
      } else {
        auto g = need_gens();
        result = {{"complex", cech_complex(g)}};
        if (!module_text.empty()) {
          FPModule m = need_module();
          GammaIResult r = gamma_I(m, g);
          result["gamma_I"] = module_json(r.module);
          result["gamma_I_atoms"] = fp_atoms(r.module).to_string();
          certs = {{"iterated", r.iterated.to_string()}, {"via_telescope", r.via_telescope.to_string()}, {"agree", r.agree}};
          pass = r.agree;
        }
      }
    } else if (check->parsed()) {
      Int s = need_s();
      PropertyFlags f;
      if (!atoms_text.empty()) {
        AtomExpr e = parse_atoms(atoms_text);
        request["atoms"] = e.to_string();
        f = atom_properties(e, s);
      } else {
        f = check_properties(need_module(), s);
      }
      result = {{"flags", f.to_json()}};
      auto v = f.violations();
      certs = {{"violations", v}};
      pass = v.empty();
    } else if (envelope->parsed()) {
      FPModule m = need_module();
      Envelope e = cotorsion_envelope(m);
      result = {{"envelope", e.envelope.to_string()}, {"map", e.map}, {"cokernel", e.cokernel}};
      certs = {{"injectivity", e.injectivity}};
      pass = e.injective;
    } else if (cover->parsed()) {
      request["name"] = name;
      CorpusSequence c = flat_cover_corpus(name);
      result = c.to_json();
      pass = c.verified();
    } else if (dual->parsed()) {
      FPModule m = need_module();
      MatlisDual d = matlis_dual_full(m);
      MatlisDual dd = matlis_dual_full(d.module, d.p, d.K);
      Morphism ev = evaluation_map(m, d, dd);
      bool bij = is_injective(ev) && is_surjective(ev);
      result = {{"dual", module_json(d.module.canonical())},
                {"dual_atoms", fp_atoms(d.module).to_string()},
                {"inclusion", jmatrix(d.inclusion.matrix())}};
      certs = {{"p", jint(d.p)},
               {"exponent", d.K},
               {"double_dual", module_json(dd.module.canonical())},
               {"evaluation_bijective", bij}};
      pass = bij && dd.module.torsion() == m.torsion();
    } else if (classify_cmd->parsed()) {
      AtomExpr e = parse_atoms(atoms_text);
      request["atoms"] = e.to_string();
      Classification c = classify(e);
      result = {{"verdict", c.verdict},
                {"flags", {{"flat", c.flags.flat}, {"reduced", c.flags.reduced}, {"cotorsion", c.flags.cotorsion},
                           {"divisible", c.flags.divisible}}}};
      if (!c.failing_flag.empty()) result["failing_flag"] = c.failing_flag;
      if (c.injective) {
        json pr = json::object();
        for (auto &[p, m] : c.injective->prufer) pr[p.str()] = jint(m);
        result["injective"] = {{"rational", jint(c.injective->rational)}, {"prufer", pr}};
      }
      if (c.flat_cotorsion) {
        json rk = json::object();
        for (auto &[p, m] : c.flat_cotorsion->ranks) rk[p.str()] = jint(m);
        result["flat_cotorsion"] = {{"rational", jint(c.flat_cotorsion->rational)}, {"ranks", rk},
                                    {"all_rank", jint(c.flat_cotorsion->all_rank)}};
      }
      if (c.reduced_cotorsion) {
        json fs = json::object();
        for (auto &[p, loc] : c.reduced_cotorsion->factors) {
          json cy = json::object();
          for (auto &[k, m] : loc.cyclic) cy[std::to_string(k)] = jint(m);
          fs[p.str()] = {{"cyclic", cy}, {"zp_rank", jint(loc.zp_rank)}};
        }
        result["reduced_cotorsion"] = {{"factors", fs}, {"all_rank", jint(c.reduced_cotorsion->all_rank)}};
      }
    } else if (lab->parsed()) {
      for (auto &a : kv) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw SchemaError("expected key=value", a);
        std::string k = a.substr(0, eq), v = a.substr(eq + 1);
        Int x = parse_int_arg(v, k);
        if (k == "p") p_text = v;
        else if (k == "N" || k == "precision") lp.precision = static_cast<unsigned>(x);
        else if (k == "M") lp.M = static_cast<unsigned>(x);
        else if (k == "K") lp.K = static_cast<unsigned>(x);
        else if (k == "seed") lp.seed = static_cast<std::uint64_t>(x);
        else if (k == "trials") lp.trials = static_cast<int>(x);
        else throw SchemaError("unknown lab parameter", k);
      }
      lp.p = parse_int_arg(p_text, "--p");
      if (lp.p < 2 || !is_prime(lp.p)) throw SchemaError("p must be a prime", "--p");
      if (lp.precision < 1) throw SchemaError("precision must be at least 1", "--precision");
      if (lp.trials < 1) throw SchemaError("trials must be positive", "--trials");
      seed = lp.seed;
      request["scenario"] = scenario;
      request["p"] = jint(lp.p);
      request["precision"] = lp.precision;
      request["M"] = lp.M;
      request["K"] = lp.K;
      request["trials"] = lp.trials;
      Report r = run_lab(scenario, lp);
      result = r.to_json();
      pass = r.all_pass();
    } else if (verify->parsed()) {
      seed = vseed;
      request["scale"] = scale;
      if (!only.empty()) request["only"] = only;
      json crit = json::array();
      json timing = json::array();
      for (auto &r : run_acceptance(parse_scale(scale), vseed, only, [&](const CriterionResult &r) {
             if (format == "text") err << criterion_line(r) << std::endl;
           })) {
        crit.push_back(r.to_json(false));
        timing.push_back(r.seconds);
        pass = pass && r.pass;
      }
      result = {{"criteria", crit}};
      criterion_seconds = timing;
    }
  } catch (const ParseError &e) {
    o.report = {{"tool", "contrakit"}, {"version", kToolVersion}, {"request", request}, {"error", error_json("ParseError", e)}};
    o.exit_code = 2;
  } catch (const SchemaError &e) {
    o.report = {{"tool", "contrakit"}, {"version", kToolVersion}, {"request", request}, {"error", error_json("SchemaError", e)}};
    o.exit_code = 2;
  } catch (const Error &e) {
    o.report = {{"tool", "contrakit"}, {"version", kToolVersion}, {"request", request}, {"error", error_json("Error", e)}};
    o.report["error"]["witness"] = {{"request", request}, {"message", e.what()}};
    o.exit_code = 1;
  }
  if (o.report.empty()) {
    o.report = {{"tool", "contrakit"}, {"version", kToolVersion}, {"request", request}, {"seed", seed},
                {"result", result}, {"certificates", certs}, {"pass", pass}};
    o.exit_code = pass ? 0 : 1;
  }
  // Everything outside "timing" is deterministic for a given request and seed.
  o.report["timing"] = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  if (!criterion_seconds.is_null()) o.report["timing"]["criterion_seconds"] = criterion_seconds;
  if (format == "text") render_text(out, o.report);
  else out << o.report.dump(2) << "\n";
  return o;
}

} // namespace contrakit
