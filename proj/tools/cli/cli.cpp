#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "pqcat/analytic.hpp"
#include "pqcat/catalan.hpp"
#include "pqcat/digits.hpp"
#include "pqcat/errors.hpp"
#include "pqcat/exceptions.hpp"
#include "pqcat/modular.hpp"
#include "pqcat/parse.hpp"
#include "pqcat/residues.hpp"
#include "pqcat/squarefree.hpp"

namespace pqcat::cli {

using nlohmann::json;

json to_json(const OutputRecord& r) {
  return json{{"command", r.command}, {"inputs", r.inputs}, {"provenance", r.provenance}, {"result", r.result}};
}

OutputRecord record_from_json(const json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.result = j.at("result");
  r.provenance = j.at("provenance").get<std::string>();
  return r;
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::map<std::string, std::string>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (v.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != 0) joined += ';';
      joined += v[i].is_structured() ? v[i].dump() : scalar_text(v[i]);
    }
    out[prefix] = joined;
    return;
  }
  out[prefix] = scalar_text(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

void emit(const std::vector<OutputRecord>& records, Format format, std::ostream& out) {
  if (format == Format::jsonl) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    return;
  }
  if (records.empty()) return;
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::string> header;
  for (const auto& r : records) {
    std::map<std::string, std::string> row;
    flatten(to_json(r), "", row);
    for (const auto& [key, value] : row) {
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
    }
    rows.push_back(std::move(row));
  }
  std::sort(header.begin(), header.end());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto it = row.find(header[i]);
      out << (i ? "," : "") << (it == row.end() ? "" : csv_field(it->second));
    }
    out << '\n';
  }
}

namespace {

std::string dec(const BigInt& v) { return v.get_str(); }

json dec_list(const std::vector<BigInt>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(dec(v));
  return out;
}

std::uint64_t parse_word(const std::string& text, const char* what) {
  const BigInt v = parse_integer(text);
  if (!v.fits_ulong_p()) throw DomainError(std::string(what) + " does not fit a machine word: " + text);
  return v.get_ui();
}

unsigned parse_small(const std::string& text, const char* what) {
  const std::uint64_t v = parse_word(text, what);
  if (v > 1'000'000) throw DomainError(std::string(what) + " is too large: " + text);
  return static_cast<unsigned>(v);
}

PrimePower prime_power(const std::string& p, const std::string& q) {
  return PrimePower(Prime(parse_word(p, "p")), parse_small(q, "q"));
}

json shape_json(const ExceptionShape& shape) {
  json j{{"describe", describe(shape)}};
  if (const auto* pure = std::get_if<PurePower>(&shape)) {
    j["kind"] = "pure_power";
    j["t"] = pure->t;
  } else if (const auto* odd = std::get_if<OddPowerSum>(&shape)) {
    j["kind"] = "odd_power_sum";
    json parts = json::array();
    for (const auto& part : odd->parts) parts.push_back({{"c", part.coefficient}, {"i", part.index}});
    j["parts"] = parts;
  } else {
    j["kind"] = "general_sum";
    j["exponents"] = std::get<GeneralSum>(shape).exponents;
  }
  return j;
}

json side_json(const SideBounds& s) { return json{{"lower", s.lower}, {"upper", s.upper}, {"log2", s.log2}}; }

LogBase parse_log(const std::string& s) { return s == "natural" ? LogBase::natural : LogBase::decimal; }

// Values bound by CLI11 for every subcommand; only the ones relevant to the
// selected subcommand are read.
struct Args {
  std::string format = "jsonl";
  std::string n, m, p, q, s, bound;
  unsigned from_digit = 0;
  std::string count_choices;
  bool shapes = false;
  unsigned sequence = 0;
  bool exhaustive = false;
  bool seed_forms = false;
  unsigned jobs = 1;
  std::string checkpoint;
  bool resume = false;
  std::size_t segment = PrimeTable::kDefaultSegment;
  std::string form = "general";
  std::string log = "decimal";
  unsigned precision = 256;
  unsigned max_precision = 4096;
  bool find_tau0 = false;
  bool want_tau1 = false;
  std::string tau0;
  bool constants = false;
};

using Records = std::vector<OutputRecord>;

Records cmd_digits(const Args& a) {
  const BigInt n = parse_integer(a.n);
  const Prime p(parse_word(a.p, "p"));
  const DigitVector d = to_base_p(n, p);
  json digits = json::array();
  for (auto x : d.digits) digits.push_back(x);
  return {{"digits",
           {{"n", dec(n)}, {"p", p.value()}},
           {{"digits", digits},
            {"display", d.to_string()},
            {"sigma", sigma_p(n, p)},
            {"legendre", dec(legendre_valuation_factorial(n, p))}},
           "base-p digits, digit sum and v_p(n!)"}};
}

Records cmd_valuation(const Args& a) {
  const BigInt m = parse_integer(a.m);
  const BigInt n = parse_integer(a.n);
  const Prime p(parse_word(a.p, "p"));
  if (n > m) throw DomainError("valuation needs n <= m");
  return {{"valuation",
           {{"m", dec(m)}, {"n", dec(n)}, {"p", p.value()}, {"from_digit", a.from_digit}},
           {{"valuation", binom_valuation(m, n, p)}, {"carries", kummer_carries(n, m - n, p, a.from_digit)}},
           "v_p(C(m, n)) as carries of n + (m - n) in base p"}};
}

Records cmd_catalan(const Args& a) {
  const BigInt n = parse_integer(a.n);
  json inputs{{"n", dec(n)}};
  json result = json::object();
  std::uint64_t s = 0;
  if (!a.p.empty()) {
    const PrimePower pp = prime_power(a.p, a.q.empty() ? "1" : a.q);
    inputs["p"] = pp.prime();
    inputs["q"] = pp.exponent();
    result["valuation"] = catalan_valuation(pp, n);
    result["divides"] = divides(pp, n);
    result["residue"] = catalan_residue_mod_pq(pp, n);
    if (pp.fits_word()) s = pp.modulus_word();
  }
  if (!a.s.empty()) {
    const std::uint64_t given = parse_word(a.s, "s");
    if (s != 0 && s != given) throw DomainError("--s must equal p^q when both are given");
    s = given;
    inputs["s"] = s;
  }
  if (s != 0 && n.fits_ulong_p() && n.get_ui() <= ExactLimits{}.max_sn / s) {
    result["value"] = dec(catalan_exact(s, n));
  } else if (!a.s.empty()) {
    catalan_exact(s, n);  // reports the guard
  }
  if (result.empty()) throw DomainError("catalan needs --s or --p");
  return {{"catalan", inputs, result, "F(s, n) = C(sn, n) / ((s - 1)n + 1)"}};
}

Records cmd_granville(const Args& a) {
  const BigInt m = parse_integer(a.m);
  const BigInt n = parse_integer(a.n);
  const PrimePower pp = prime_power(a.p, a.q);
  const GranvilleResult g = granville_binom_mod_pq(m, n, pp);
  return {{"granville",
           {{"m", dec(m)}, {"n", dec(n)}, {"p", pp.prime()}, {"q", pp.exponent()}},
           {{"e0", g.e0}, {"unit_residue", g.unit_residue}},
           "C(m, n) = p^e0 * unit, unit mod p^q"}};
}

Records cmd_exceptions(const Args& a) {
  if (!a.count_choices.empty()) {
    const Prime p(parse_word(a.p, "p"));
    const std::uint64_t choices = parse_word(a.count_choices, "choices");
    return {{"exceptions",
             {{"p", p.value()}, {"q", 2}, {"count_choices", choices}},
             {{"count", dec(count_exceptions_q2(p, choices))}},
             "q = 2 exceptions counted as size-p multisets of odd-exponent slots"}};
  }
  const PrimePower pp = prime_power(a.p, a.q);
  const BigInt bound = parse_integer(a.bound);
  const auto forms = enumerate_exceptions(pp, bound);
  json values = json::array();
  json details = json::array();
  for (const auto& f : forms) {
    values.push_back(dec(f.value));
    if (!a.shapes) continue;
    json d{{"n", dec(f.value)}};
    json shapes = json::array();
    for (const auto& s : f.shapes) shapes.push_back(shape_json(s));
    d["shapes"] = shapes;
    if (pp.exponent() == 2) d["residue"] = residue_of_exception(f);
    details.push_back(d);
  }
  json result{{"values", values}, {"count", forms.size()}};
  if (a.shapes) result["forms"] = details;
  return {{"exceptions",
           {{"p", pp.prime()}, {"q", pp.exponent()}, {"bound", dec(bound)}},
           result,
           "n <= bound with p^q not dividing F(p^q, n)"}};
}

Records cmd_residues(const Args& a) {
  Records out;
  if (a.sequence != 0) {
    for (const auto& r : residue_count_sequence(a.sequence)) {
      json count = r.count ? json(*r.count) : json(nullptr);
      out.push_back({"residues",
                     {{"s", r.s}},
                     {{"count", count}, {"supported", r.count.has_value()}},
                     "number of distinct residues of F(s^2, n) mod s^2, prime s"});
    }
    return out;
  }
  const Prime p(parse_word(a.p, "p"));
  const auto set = residue_set_p2(p);
  out.push_back({"residues",
                 {{"p", p.value()}},
                 {{"residues", set}, {"size", set.size()}, {"partition_bound", dec(partition_count(static_cast<unsigned>(p.value())) + 1)}},
                 "least residues of F(p^2, n) mod p^2 from multinomials over partitions of p"});
  return out;
}

Records cmd_scan(const Args& a) {
  const PrimePower pp = prime_power(a.p, a.q);
  const BigInt bound = parse_integer(a.bound);
  if (a.exhaustive && a.seed_forms) throw DomainError("--exhaustive and --seed-forms are exclusive");
  ScanOptions opts;
  opts.exhaustive = a.exhaustive;
  opts.jobs = std::max(1u, a.jobs);
  opts.resume = a.resume;
  opts.config.segment = a.segment;
  if (!a.checkpoint.empty()) opts.checkpoint_path = a.checkpoint;
  const ScanReport r = scan_candidates(pp, bound, opts);
  json result{{"hits", dec_list(r.squarefree_hits)},
              {"candidates_tested", r.candidates_tested},
              {"pure_power_candidates", r.pure_power_candidates},
              {"exhaustive", r.exhaustive},
              {"last_n", dec(r.checkpoint)},
              {"resumed", r.resumed},
              {"elapsed_seconds", r.elapsed_seconds}};
  if (r.checkpoint_path) result["checkpoint_path"] = r.checkpoint_path->string();
  return {{"scan",
           {{"p", pp.prime()}, {"q", pp.exponent()}, {"bound", dec(bound)}, {"jobs", opts.jobs}},
           result,
           "n <= bound with C(p^q n + 1, n) squarefree"}};
}

Records cmd_verify(const Args& a) {
  const PrimePower pp = prime_power(a.p, a.q);
  const BigInt bound = parse_integer(a.bound);
  SquarefreeConfig config;
  config.segment = a.segment;
  return {{"verify",
           {{"p", pp.prime()}, {"q", pp.exponent()}, {"bound", dec(bound)}},
           {{"holds", verify_divisibility_filter(pp, bound, config)}},
           "outside the exception list, C(p^q n + 1, n) is never squarefree"}};
}

Records cmd_threshold(const Args& a) {
  const PrimePower pp = prime_power(a.p, a.q);
  std::vector<InequalityForm> forms;
  if (a.form == "general" || a.form == "both") forms.push_back(InequalityForm::general);
  if (a.form == "specialized" || a.form == "both") forms.push_back(InequalityForm::specialized);

  Records out;
  const json base{{"p", pp.prime()}, {"q", pp.exponent()}, {"log", a.log}, {"precision", a.precision}};
  if (a.constants) {
    const auto given = specialized_constants(pp);
    const auto derived = derive_specialization(pp, parse_log(a.log));
    out.push_back({"threshold",
                   base,
                   {{"published", {{"c_main", given.c_main}, {"c_tail", given.c_tail}, {"log_scale", given.log_scale}}},
                    {"derived", {{"c_main", derived.c_main}, {"c_tail", derived.c_tail}}},
                    {"c_main_agrees_4_figures", agrees_to_significant_figures(derived.c_main, std::stod(given.c_main), 4)},
                    {"c_tail_agrees_6_figures", agrees_to_significant_figures(derived.c_tail, std::stod(given.c_tail), 6)}},
                   "published specialized constants against the general form"});
  }
  for (InequalityForm form : forms) {
    InequalityInstance inst{pp};
    inst.form = form;
    inst.log_base = parse_log(a.log);
    inst.precision = a.precision;
    inst.max_precision = std::max(a.max_precision, a.precision);
    validate(inst);
    json inputs = base;
    inputs["form"] = to_string(form);
    if (!a.n.empty()) {
      const BigInt n = parse_integer(a.n);
      const auto e = inequality_sides(inst, n);
      json in = inputs;
      in["n"] = a.n;
      out.push_back({"threshold",
                     in,
                     {{"verdict", to_string(e.verdict)},
                      {"precision_used", e.precision_used},
                      {"lhs", side_json(e.lhs)},
                      {"rhs", side_json(e.rhs)}},
                     "both sides of the squarefreeness inequality, outward rounded"});
    }
    if (a.find_tau0 || (a.want_tau1 && a.tau0.empty())) {
      const auto b = find_tau0(inst);
      json result{{"exponent", b.exponent},
                  {"verified_through", b.verified_through},
                  {"evaluations", b.evaluations},
                  {"max_precision_used", b.max_precision_used}};
      if (a.want_tau1) {
        BigInt t0;
        mpz_ui_pow_ui(t0.get_mpz_t(), 2, b.exponent);
        result["tau1"] = dec(tau1(pp, t0, a.precision));
      }
      out.push_back({"threshold", inputs, result, "smallest power-of-two exponent where the inequality holds"});
    } else if (a.want_tau1) {
      json in = inputs;
      in["tau0"] = a.tau0;
      out.push_back({"threshold", in, {{"tau1", dec(tau1(pp, parse_integer(a.tau0), a.precision))}},
                     "max((e^60 - 1)/(p^q - 1), 5^10 p^{5q}, tau0)"});
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Catalan numbers modulo prime powers", "pqcat"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Args a;
  app.add_option("--format", a.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();

  auto add_pq = [&](CLI::App* sub, bool q_required) {
    sub->add_option("--p", a.p, "prime")->required();
    auto* q = sub->add_option("--q", a.q, "exponent");
    if (q_required) q->required();
  };

  auto* digits = app.add_subcommand("digits", "base-p digits of n");
  digits->add_option("--n", a.n)->required();
  digits->add_option("--p", a.p)->required();

  auto* valuation = app.add_subcommand("valuation", "v_p(C(m, n)) by carries");
  valuation->add_option("--m", a.m)->required();
  valuation->add_option("--n", a.n)->required();
  valuation->add_option("--p", a.p)->required();
  valuation->add_option("--from-digit", a.from_digit);

  auto* catalan = app.add_subcommand("catalan", "F(s, n), its valuation and residue");
  catalan->add_option("--n", a.n)->required();
  catalan->add_option("--s", a.s);
  catalan->add_option("--p", a.p);
  catalan->add_option("--q", a.q);

  auto* granville = app.add_subcommand("granville", "C(m, n) mod p^q");
  granville->add_option("--m", a.m)->required();
  granville->add_option("--n", a.n)->required();
  add_pq(granville, true);

  auto* exceptions = app.add_subcommand("exceptions", "n with p^q not dividing F(p^q, n)");
  add_pq(exceptions, false);
  exceptions->add_option("--bound", a.bound);
  exceptions->add_flag("--shapes", a.shapes, "include structural forms");
  exceptions->add_option("--count-choices", a.count_choices, "count q = 2 exceptions over this many slot choices");

  auto* residues = app.add_subcommand("residues", "residues of F(p^2, n) mod p^2");
  residues->add_option("--p", a.p);
  residues->add_option("--sequence", a.sequence, "counts for s = 1..S");

  auto* scan = app.add_subcommand("scan", "squarefree C(p^q n + 1, n)");
  add_pq(scan, true);
  scan->add_option("--bound", a.bound)->required();
  scan->add_flag("--exhaustive", a.exhaustive, "test every n");
  scan->add_flag("--seed-forms", a.seed_forms, "test exception forms only (default)");
  scan->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
  scan->add_option("--checkpoint", a.checkpoint);
  scan->add_flag("--resume", a.resume);
  scan->add_option("--segment", a.segment)->envname("PQCAT_SIEVE_SEGMENT")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check the divisibility filter");
  add_pq(verify, true);
  verify->add_option("--bound", a.bound)->required();
  verify->add_option("--segment", a.segment)->envname("PQCAT_SIEVE_SEGMENT")->check(CLI::PositiveNumber);

  auto* threshold = app.add_subcommand("threshold", "squarefreeness inequality");
  add_pq(threshold, true);
  threshold->add_option("--n", a.n);
  threshold->add_option("--form", a.form)->check(CLI::IsMember({"general", "specialized", "both"}));
  threshold->add_option("--log", a.log)->check(CLI::IsMember({"decimal", "natural"}));
  threshold->add_option("--precision", a.precision)->envname("PQCAT_PRECISION");
  threshold->add_option("--max-precision", a.max_precision);
  threshold->add_flag("--find-tau0", a.find_tau0);
  threshold->add_flag("--tau1", a.want_tau1);
  threshold->add_option("--tau0", a.tau0);
  threshold->add_flag("--constants", a.constants, "compare published specialized constants");

  const std::map<CLI::App*, std::function<Records(const Args&)>> handlers{
      {digits, cmd_digits},         {valuation, cmd_valuation}, {catalan, cmd_catalan},
      {granville, cmd_granville},   {exceptions, cmd_exceptions}, {residues, cmd_residues},
      {scan, cmd_scan},             {verify, cmd_verify},       {threshold, cmd_threshold}};

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "pqcat: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto selected = app.get_subcommands();
  try {
    const Records records = handlers.at(selected.front())(a);
    emit(records, a.format == "csv" ? Format::csv : Format::jsonl, out);
  } catch (const DomainError& e) {
    err << "pqcat: " << e.what() << '\n';
    return kDomainError;
  } catch (const ResourceError& e) {
    err << "pqcat: " << e.what() << '\n';
    return kResourceError;
  }
  return kSuccess;
}

}  // namespace pqcat::cli
