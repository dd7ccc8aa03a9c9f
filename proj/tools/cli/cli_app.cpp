#include "cli/cli_app.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "slocal/serialize.hpp"
#include "slocal/verify.hpp"

namespace slocal::cli {

using nlohmann::json;

namespace {

struct RingArgs {
  std::string chr = "zero";
  std::uint64_t p = 2;
  unsigned precision = 16;

  Ring make() const {
    if (chr != "zero" && chr != "positive")
      throw Error(Errc::bad_argument, "--char must be zero or positive");
    return make_ring(chr == "zero" ? Characteristic::zero : Characteristic::positive, p,
                     precision);
  }
};

void add_ring_options(CLI::App* cmd, RingArgs& args) {
  cmd->add_option("--char", args.chr, "ring characteristic: zero | positive");
  cmd->add_option("--p", args.p, "residue characteristic (prime)");
  cmd->add_option("--precision", args.precision, "elements are known modulo pi^precision");
}

RingElem parse_elem(const Ring& ring, const std::string& text) {
  if (!text.empty() && text.front() == '[') return elem_from_json(ring, json::parse(text));
  return elem_from_json(ring, json(text));
}

std::vector<RingElem> parse_elem_list(const Ring& ring, const std::string& text) {
  std::vector<RingElem> out;
  if (!text.empty() && text.front() == '[') {
    for (const auto& item : json::parse(text)) out.push_back(elem_from_json(ring, item));
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_elem(ring, part));
  return out;
}

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_argument, "cannot open input file " + path);
  json j;
  in >> j;
  return j;
}

// One report object per invocation: query echo, result payload, provenance
// of any pinned value, and wall time (the only nondeterministic field).
class Report {
 public:
  Report() : start_(std::chrono::steady_clock::now()) {}

  void set(json query, json result, json provenance = nullptr) {
    query_ = std::move(query);
    result_ = std::move(result);
    provenance_ = std::move(provenance);
    armed_ = true;
  }

  bool armed() const { return armed_; }
  void fail() { failed_ = true; }
  bool failed() const { return failed_; }

  json render() const {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    return json{{"query", query_},
                {"result", result_},
                {"provenance", provenance_},
                {"wall_time_ms", ms}};
  }

 private:
  std::chrono::steady_clock::time_point start_;
  json query_;
  json result_;
  json provenance_;
  bool armed_ = false;
  bool failed_ = false;
};

json valuation_json(const Valuation& v) {
  if (v.is_exact()) return v.value();
  return "AtLeastPrecision";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact local-ring arithmetic, elementary factorizations, congruence "
               "quotients and invariant flags"};
  app.require_subcommand(1);

  Report report;
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report to this file instead of stdout");

  // ---- ring ---------------------------------------------------------------
  auto* ring_cmd = app.add_subcommand("ring", "arithmetic in the truncated valuation ring");
  ring_cmd->require_subcommand(1);
  struct {
    RingArgs ring;
    std::string op = "add", a, b;
    std::vector<std::string> gens;
  } ring_args;

  auto* arith = ring_cmd->add_subcommand("arith", "add | sub | mul | neg");
  add_ring_options(arith, ring_args.ring);
  arith->add_option("--op", ring_args.op, "add | sub | mul | neg")->required();
  arith->add_option("--a", ring_args.a, "first operand")->required();
  arith->add_option("--b", ring_args.b, "second operand (ignored by neg)");
  arith->callback([&] {
    const Ring ring = ring_args.ring.make();
    const RingElem a = parse_elem(ring, ring_args.a);
    const RingElem b = ring_args.b.empty() ? ring.zero() : parse_elem(ring, ring_args.b);
    RingOp op;
    if (ring_args.op == "add") op = RingOp::add;
    else if (ring_args.op == "sub") op = RingOp::sub;
    else if (ring_args.op == "mul") op = RingOp::mul;
    else if (ring_args.op == "neg") op = RingOp::neg;
    else throw Error(Errc::bad_argument, "unknown --op " + ring_args.op);
    const RingElem r = ring_arith(op, a, b);
    report.set(json{{"command", "ring arith"}, {"ring", ring_to_json(ring)},
                    {"op", ring_args.op}, {"a", elem_to_json(a)}, {"b", elem_to_json(b)}},
               json{{"value", elem_to_json(r)}});
  });

  auto* val_cmd = ring_cmd->add_subcommand("valuation", "pi-adic valuation");
  add_ring_options(val_cmd, ring_args.ring);
  val_cmd->add_option("--a", ring_args.a, "element")->required();
  val_cmd->callback([&] {
    const Ring ring = ring_args.ring.make();
    const RingElem a = parse_elem(ring, ring_args.a);
    report.set(json{{"command", "ring valuation"}, {"ring", ring_to_json(ring)},
                    {"a", elem_to_json(a)}},
               json{{"valuation", valuation_json(valuation(a))}});
  });

  auto* inv_cmd = ring_cmd->add_subcommand("invert", "multiplicative inverse of a unit");
  add_ring_options(inv_cmd, ring_args.ring);
  inv_cmd->add_option("--a", ring_args.a, "unit element")->required();
  inv_cmd->callback([&] {
    const Ring ring = ring_args.ring.make();
    const RingElem a = parse_elem(ring, ring_args.a);
    const RingElem r = invert(a);
    report.set(json{{"command", "ring invert"}, {"ring", ring_to_json(ring)},
                    {"a", elem_to_json(a)}},
               json{{"value", elem_to_json(r)}, {"check", elem_to_json(a * r)}});
  });

  auto* level_cmd = ring_cmd->add_subcommand(
      "level", "smallest k with pi^k O inside the additive closure of the generators");
  add_ring_options(level_cmd, ring_args.ring);
  level_cmd->add_option("--gens", ring_args.gens, "generators (repeatable or comma list)")
      ->required();
  level_cmd->callback([&] {
    const Ring ring = ring_args.ring.make();
    std::vector<RingElem> gens;
    for (const auto& g : ring_args.gens)
      for (auto& e : parse_elem_list(ring, g)) gens.push_back(std::move(e));
    const auto level = additive_subgroup_level(gens);
    json gens_json = json::array();
    for (const auto& g : gens) gens_json.push_back(elem_to_json(g));
    report.set(json{{"command", "ring level"}, {"ring", ring_to_json(ring)},
                    {"gens", std::move(gens_json)}},
               level ? json{{"level", *level}} : json{{"level", "NotFiniteIndex"}});
  });

  // ---- hensel ---------------------------------------------------------------
  auto* hensel_cmd = app.add_subcommand("hensel", "Newton lifting of an approximate root");
  struct {
    RingArgs ring;
    std::string coeffs, a;
  } hensel_args;
  add_ring_options(hensel_cmd, hensel_args.ring);
  hensel_cmd->add_option("--coeffs", hensel_args.coeffs,
                         "polynomial coefficients, lowest degree first")->required();
  hensel_cmd->add_option("--a", hensel_args.a, "starting approximation")->required();
  hensel_cmd->callback([&] {
    const Ring ring = hensel_args.ring.make();
    const Polynomial f{ring, parse_elem_list(ring, hensel_args.coeffs)};
    const RingElem a = parse_elem(ring, hensel_args.a);
    const LiftResult lift = hensel_lift_trace(f, a);
    report.set(json{{"command", "hensel"}, {"ring", ring_to_json(ring)},
                    {"coeffs", poly_to_json(f)}, {"a", elem_to_json(a)}},
               json{{"root", elem_to_json(lift.root)},
                    {"residual_valuations", lift.residual_valuations},
                    {"value_at_root", elem_to_json(poly_eval(f, lift.root))}});
  });

  // ---- fourth-root ----------------------------------------------------------
  auto* root_cmd = app.add_subcommand("fourth-root",
                                      "unit fourth root of a negative integer");
  struct {
    std::uint64_t p = 2;
    unsigned precision = 32;
  } root_args;
  root_cmd->add_option("--p", root_args.p, "residue characteristic");
  root_cmd->add_option("--precision", root_args.precision, "model precision");
  root_cmd->callback([&] {
    const Ring ring = make_ring(Characteristic::zero, root_args.p, root_args.precision);
    const RootWitness w = fourth_root_witness(ring);
    if (!w.certificate.is_zero()) report.fail();
    report.set(json{{"command", "fourth-root"}, {"ring", ring_to_json(ring)}},
               json{{"q", elem_to_json(w.q)}, {"r", w.r},
                    {"certificate", elem_to_json(w.certificate)}},
               "self-certifying: q^4 + r evaluated in the model");
  });

  // ---- decompose ------------------------------------------------------------
  auto* dec_cmd = app.add_subcommand("decompose",
                                     "factor an SL_n matrix into elementary letters");
  struct {
    std::string input, inline_json;
  } dec_args;
  dec_cmd->add_option("--input", dec_args.input, "JSON file {\"ring\":..., \"matrix\":...}");
  dec_cmd->add_option("--json", dec_args.inline_json, "inline JSON document");
  dec_cmd->callback([&] {
    if (dec_args.input.empty() == dec_args.inline_json.empty())
      throw Error(Errc::bad_argument, "provide exactly one of --input or --json");
    const json doc = dec_args.input.empty() ? json::parse(dec_args.inline_json)
                                            : load_input(dec_args.input);
    const Ring ring = ring_from_json(doc.at("ring"));
    const RMatrix m = matrix_from_json(ring, doc.at("matrix"));
    const ElementaryWord w = m.dim() == 2 ? decompose_sl2(m) : decompose_sln(m);
    const bool exact = evaluate_word(w) == m;
    if (!exact) report.fail();
    report.set(json{{"command", "decompose"}, {"ring", ring_to_json(ring)},
                    {"matrix", matrix_to_json(m)}},
               json{{"word", word_to_json(w)}, {"letters", w.size()},
                    {"round_trip_exact", exact}},
               "round-trip: the word was re-evaluated against the input");
  });

  // ---- el-diagonal ----------------------------------------------------------
  auto* eld_cmd = app.add_subcommand(
      "el-diagonal", "diagonal dilation as a word with letters of valuation >= k");
  struct {
    RingArgs ring;
    unsigned k = 1;
    std::string x = "1";
  } eld_args;
  add_ring_options(eld_cmd, eld_args.ring);
  eld_cmd->add_option("--k", eld_args.k, "valuation level")->required();
  eld_cmd->add_option("--x", eld_args.x, "dilation parameter");
  eld_cmd->callback([&] {
    const Ring ring = eld_args.ring.make();
    const RingElem x = parse_elem(ring, eld_args.x);
    const ElementaryWord w = el_diagonal_word(eld_args.k, x);
    unsigned min_val = ring.precision();
    for (const Letter& l : w.letters()) {
      const Valuation v = valuation(l.x);
      if (v.is_exact()) min_val = std::min(min_val, v.value());
    }
    report.set(json{{"command", "el-diagonal"}, {"ring", ring_to_json(ring)},
                    {"k", eld_args.k}, {"x", elem_to_json(x)}},
               json{{"word", word_to_json(w)},
                    {"product", matrix_to_json(evaluate_word(w))},
                    {"min_letter_valuation", min_val}});
  });

  // ---- verify-identities ------------------------------------------------------
  auto* vid_cmd = app.add_subcommand("verify-identities",
                                     "run the exact matrix-identity suite");
  struct {
    std::uint64_t seed = 20260809;
    std::size_t instances = 2000;
  } vid_args;
  vid_cmd->add_option("--seed", vid_args.seed, "PRNG seed");
  vid_cmd->add_option("--instances", vid_args.instances, "random instances per identity");
  vid_cmd->callback([&] {
    const auto results = verify::run_identity_suite(vid_args.seed, vid_args.instances);
    json checks = json::array();
    bool ok = true;
    for (const auto& r : results) {
      checks.push_back(json{{"name", r.name}, {"instances", r.instances},
                            {"failures", r.failures}});
      if (r.failures) ok = false;
    }
    if (!ok) report.fail();
    report.set(json{{"command", "verify-identities"}, {"seed", vid_args.seed},
                    {"instances", vid_args.instances}},
               json{{"checks", std::move(checks)}, {"all_passed", ok}});
  });

  // ---- congruence -------------------------------------------------------------
  auto* cong_cmd = app.add_subcommand("congruence",
                                      "finite quotient groups SL_n(Z/p^m)");
  cong_cmd->require_subcommand(1);
  struct {
    int n = 2;
    std::uint64_t p = 2;
    unsigned m = 1;
    unsigned k = 0;
    unsigned dim = 2;
    std::size_t cap = std::size_t(1) << 22;
  } cong_args;

  const auto add_cong_options = [&](CLI::App* cmd, bool with_k, bool with_dim) {
    cmd->add_option("--n", cong_args.n, "matrix dimension");
    cmd->add_option("--p", cong_args.p, "prime");
    cmd->add_option("--m", cong_args.m, "quotient level: entries mod p^m");
    if (with_k) cmd->add_option("--k", cong_args.k, "congruence level");
    if (with_dim) cmd->add_option("--dim", cong_args.dim, "target dimension");
    cmd->add_option("--element-cap", cong_args.cap, "closure element cap");
  };

  const auto sl_group = [&]() {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < cong_args.m; ++i) {
      q *= cong_args.p;
      if (q > 0xffffffffULL) throw Error(Errc::bad_argument, "p^m exceeds supported range");
    }
    std::vector<FiniteMat> gens;
    for (int i = 1; i <= cong_args.n; ++i)
      for (int j = 1; j <= cong_args.n; ++j)
        if (i != j)
          gens.push_back(FiniteMat::elementary(static_cast<std::uint32_t>(q), cong_args.n,
                                               i, j, 1));
    return group_closure(gens, {cong_args.cap});
  };
  const auto cong_query = [&](const char* name) {
    return json{{"command", std::string("congruence ") + name}, {"n", cong_args.n},
                {"p", cong_args.p}, {"m", cong_args.m}};
  };

  auto* order_cmd = cong_cmd->add_subcommand("order", "group order by closure");
  add_cong_options(order_cmd, false, false);
  order_cmd->callback([&] {
    const FiniteGroup g = sl_group();
    report.set(cong_query("order"),
               json{{"order", g.size()},
                    {"order_formula", sl_order_formula(cong_args.n, cong_args.p, cong_args.m)}},
               "enumerated by closure; the standard order formula is the cross-check");
    if (g.size() != sl_order_formula(cong_args.n, cong_args.p, cong_args.m)) report.fail();
  });

  auto* index_cmd = cong_cmd->add_subcommand(
      "index", "index of the level-k principal congruence subgroup");
  add_cong_options(index_cmd, true, false);
  index_cmd->callback([&] {
    if (cong_args.k > cong_args.m)
      throw Error(Errc::bad_argument, "requires k <= m");
    const FiniteGroup g = sl_group();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < cong_args.k; ++i) pk *= cong_args.p;
    std::vector<FiniteMat> members;
    const FiniteMat id = FiniteMat::identity(g.modulus(), g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const FiniteMat e = g.element(i);
      bool congruent = true;
      for (int r = 0; r < g.dim() && congruent; ++r)
        for (int c = 0; c < g.dim() && congruent; ++c)
          if ((e.at(r, c) + g.modulus() - id.at(r, c)) % pk != 0) congruent = false;
      if (congruent) members.push_back(e);
    }
    const FiniteGroup h = group_closure(g.modulus(), g.dim(), members, {cong_args.cap});
    json q = cong_query("index");
    q["k"] = cong_args.k;
    report.set(std::move(q),
               json{{"index", subgroup_index(h, g)}, {"kernel_order", h.size()}});
  });

  auto* ab_cmd = cong_cmd->add_subcommand("abelianization", "invariant factors of G/[G,G]");
  add_cong_options(ab_cmd, false, false);
  ab_cmd->callback([&] {
    const FiniteGroup g = sl_group();
    const auto factors = abelianization(g, {cong_args.cap});
    report.set(cong_query("abelianization"),
               json{{"order", g.size()}, {"invariant_factors", factors}});
  });

  auto* eli_cmd = cong_cmd->add_subcommand(
      "el-index", "index of the subgroup generated by level-k elementary letters");
  add_cong_options(eli_cmd, true, false);
  eli_cmd->callback([&] {
    const std::uint64_t value =
        el_image_index(cong_args.n, cong_args.p, cong_args.k, cong_args.m, {cong_args.cap});
    json q = cong_query("el-index");
    q["k"] = cong_args.k;
    // golden-value file shape, ready for regression pinning
    report.set(std::move(q), json{{"query", json{{"op", "el_image_index"}, {"n", cong_args.n},
                                                  {"p", cong_args.p}, {"k", cong_args.k},
                                                  {"m", cong_args.m}}},
                                   {"value", value}},
               "bfs_closure");
  });

  const auto run_rep = [&](const char* name) {
    const RepDescription rep = nontrivial_rep(cong_args.p, cong_args.dim, {cong_args.cap});
    report.set(json{{"command", name}, {"p", cong_args.p}, {"dim", cong_args.dim}},
               rep_to_json(rep),
               "cyclic order from the abelianization; angles exact integers");
  };
  auto* rep_cmd = cong_cmd->add_subcommand("nontrivial-rep",
                                           "rotation representation for p = 2, 3");
  add_cong_options(rep_cmd, false, true);
  rep_cmd->callback([&] { run_rep("congruence nontrivial-rep"); });

  auto* rep_top = app.add_subcommand("nontrivial-rep",
                                     "rotation representation for p = 2, 3");
  add_cong_options(rep_top, false, true);
  rep_top->callback([&] { run_rep("nontrivial-rep"); });

  // ---- flags ------------------------------------------------------------------
  auto* flags_cmd = app.add_subcommand("flags", "exact rational invariant flags");
  flags_cmd->require_subcommand(1);
  struct {
    std::string input;
  } flags_args;

  auto* jh_cmd = flags_cmd->add_subcommand("jh", "common 1-eigenspace flag");
  jh_cmd->add_option("--input", flags_args.input, "JSON file {\"matrices\": [...]}")
      ->required();
  jh_cmd->callback([&] {
    const json doc = load_input(flags_args.input);
    std::vector<QMatrix> mats;
    for (const auto& mj : doc.at("matrices")) mats.push_back(qmatrix_from_json(mj));
    const Flag flag = jh_series(mats);
    json dims = json::array();
    for (const Subspace& s : flag.spaces()) dims.push_back(s.dim());
    report.set(json{{"command", "flags jh"}, {"matrices", doc.at("matrices")}},
               json{{"flag", flag_to_json(flag)}, {"dimensions", std::move(dims)}});
  });

  auto* ci_cmd = flags_cmd->add_subcommand("check-invariance",
                                           "is the flag preserved by the generators?");
  ci_cmd->add_option("--input", flags_args.input,
                     "JSON file {\"matrices\": [...], \"flag\": [...]}")
      ->required();
  ci_cmd->callback([&] {
    const json doc = load_input(flags_args.input);
    std::vector<QMatrix> gens;
    for (const auto& mj : doc.at("matrices")) gens.push_back(qmatrix_from_json(mj));
    if (gens.empty()) throw Error(Errc::bad_argument, "no generators given");
    const Flag flag = flag_from_json(gens.front().dim(), doc.at("flag"));
    const bool invariant = flag_invariant_under(gens, flag);
    report.set(json{{"command", "flags check-invariance"}},
               json{{"invariant", invariant}});
  });

  // ---- verify-paper -------------------------------------------------------------
  auto* vp_cmd = app.add_subcommand(
      "verify-paper", "run the full lemma-check suite (acceptance criteria 1-10)");
  struct {
    verify::Options opts;
    std::string regen;
  } vp_args;
  vp_cmd->add_option("--seed", vp_args.opts.seed, "PRNG seed");
  vp_cmd->add_option("--element-cap", vp_args.opts.element_cap, "closure element cap");
  vp_cmd->add_option("--golden", vp_args.opts.golden_path,
                     "golden fixture file (defaults to the built-in pinned values)");
  vp_cmd->add_flag_callback("--no-runtime-budget",
                            [&] { vp_args.opts.enforce_runtime = false; },
                            "report runtimes without enforcing the budgets");
  vp_cmd->add_option("--regen-golden", vp_args.regen,
                     "recompute the pinned values via the enumeration oracle and write "
                     "this fixture file");
  vp_cmd->callback([&] {
    if (!vp_args.regen.empty()) {
      const auto entries = verify::compute_el_index_golden(vp_args.opts.element_cap);
      verify::write_golden(vp_args.regen, entries);
      json listed = json::array();
      for (const auto& e : entries)
        listed.push_back(json{{"query", e.query}, {"value", e.value}, {"oracle", e.oracle}});
      report.set(json{{"command", "verify-paper --regen-golden"}},
                 json{{"written", vp_args.regen}, {"entries", std::move(listed)}},
                 "bfs_closure");
      return;
    }
    const auto results = verify::run_all(vp_args.opts);
    json criteria = json::array();
    for (const auto& r : results) {
      err << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << "  " << r.name << " ("
          << r.seconds << "s)\n";
      criteria.push_back(json{{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                              {"detail", r.detail}, {"seconds", r.seconds},
                              {"budget_seconds", r.budget_seconds}});
    }
    const bool ok = verify::all_passed(results);
    if (!ok) report.fail();
    report.set(json{{"command", "verify-paper"}, {"seed", vp_args.opts.seed}},
               json{{"criteria", std::move(criteria)}, {"all_passed", ok}});
  });

  // ---- parse and emit -------------------------------------------------------
  std::vector<const char*> argv;
  argv.push_back("slocal");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    const json failure{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    out << failure.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    const json failure{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    out << failure.dump(2) << "\n";
    return 1;
  }

  if (!report.armed()) {
    err << "no action selected\n";
    return 2;
  }
  const json rendered = report.render();
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      err << "cannot write " << out_path << "\n";
      return 2;
    }
    f << rendered.dump(2) << "\n";
  } else {
    out << rendered.dump(2) << "\n";
  }
  return report.failed() ? 1 : 0;
}

}  // namespace slocal::cli
