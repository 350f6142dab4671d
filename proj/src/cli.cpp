#include "ecogen/cli.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecogen/catalog.hpp"
#include "ecogen/classify.hpp"
#include "ecogen/engine.hpp"
#include "ecogen/guess.hpp"
#include "ecogen/kernel.hpp"
#include "json.hpp"

namespace ecogen {

namespace {

struct Source {
  std::string system;
  std::string file;
};

void add_source(CLI::App* app, Source& src) {
  auto* s = app->add_option("--system", src.system, "built-in system name (see `catalog --list`)");
  auto* f = app->add_option("--file", src.file, "spec file, DSL text or canonical JSON");
  s->excludes(f);
}

EcoSpec load(const Source& src) {
  if (!src.system.empty()) {
    const CatalogEntry* e = find_entry(src.system);
    if (!e) throw UsageError("unknown system '" + src.system + "'");
    return parse_spec(e->spec);
  }
  if (src.file.empty()) throw UsageError("one of --system or --file is required");
  std::ifstream in(src.file);
  if (!in) throw UsageError("cannot read spec file '" + src.file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return from_canonical_json(text);
  return parse_spec(text);
}

std::string join(const Series& v) {
  std::string s;
  for (std::size_t i = 0; i < v.order(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

const std::vector<std::string> kFormats{"text", "json", "csv"};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generating trees: counting, sampling, classification and generating functions"};
  app.require_subcommand(1);

  Source src;
  std::size_t n = 10;
  std::size_t order = 32;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string strategy = "binary";
  Label cap = CountOptions::kDefaultLabelCap;

  auto* count = app.add_subcommand("count", "level totals by forward propagation");
  add_source(count, src);
  count->add_option("-n", n, "number of steps");
  count->add_option("--format", format)->check(CLI::IsMember(kFormats));
  count->add_option("--cap", cap, "largest label the engine may create");
  bool naive = false;
  count->add_flag("--naive", naive, "propagate per successor instead of by ranges");

  auto* sample = app.add_subcommand("sample", "uniform random walks of length n");
  add_source(sample, src);
  sample->add_option("-n", n, "walk length");
  sample->add_option("--seed", seed);
  std::size_t draws = 1;
  sample->add_option("--count", draws, "number of walks");
  sample->add_option("--strategy", strategy)->check(CLI::IsMember({"sequential", "binary"}));
  sample->add_option("--format", format)->check(CLI::IsMember(kFormats));
  sample->add_option("--cap", cap);

  auto* classify_cmd = app.add_subcommand("classify", "structural criteria and closed forms");
  add_source(classify_cmd, src);
  classify_cmd->add_option("--order", order, "terms used to verify closed forms");
  classify_cmd->add_option("--format", format)->check(CLI::IsMember(kFormats));

  auto* gf = app.add_subcommand("gf", "kernel-method generating functions of a factorial walk");
  add_source(gf, src);
  gf->add_option("--order", order);
  gf->add_option("--format", format)->check(CLI::IsMember(kFormats));

  auto* guess = app.add_subcommand("guess", "rational and algebraic reconstruction from engine terms");
  add_source(guess, src);
  guess->add_option("--order", order, "terms taken from the engine");
  int dmax = 8, dz = 4, dF = 2;
  std::size_t holdout = 10;
  guess->add_option("--dmax", dmax, "largest numerator/denominator degree");
  guess->add_option("--dz", dz, "degree in z of the algebraic relation");
  guess->add_option("--dF", dF, "degree in F of the algebraic relation");
  guess->add_option("--holdout", holdout);
  guess->add_option("--format", format)->check(CLI::IsMember(kFormats));

  auto* cat = app.add_subcommand("catalog", "verify built-in systems against golden data");
  std::vector<std::string> names;
  cat->add_option("names", names, "entries to verify (default: all)");
  bool list = false;
  cat->add_flag("--list", list, "list entries and exit");
  cat->add_option("--format", format)->check(CLI::IsMember(kFormats));

  auto* bench = app.add_subcommand("bench", "timings for counting and sampling");
  std::string task = "count";
  bench->add_option("task", task)->check(CLI::IsMember({"count", "sample"}));
  add_source(bench, src);
  bench->add_option("-n", n);
  bench->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) {
      const EcoSpec spec = load(src);
      CountOptions opts;
      opts.naive = naive;
      opts.cap = cap;
      const CountTable t = count_levels(spec, n, opts);
      if (format == "csv")
        out << to_csv(t);
      else if (format == "json")
        out << totals_json(t);
      else
        for (std::size_t i = 0; i < t.totals.size(); ++i) out << i << " " << t.totals[i] << "\n";
      return 0;
    }

    if (sample->parsed()) {
      const EcoSpec spec = load(src);
      CountOptions opts;
      opts.cap = cap;
      auto table = std::make_shared<const BackTable>(back_table(spec, n, opts));
      Sampler sampler(spec, table, seed);
      const SampleStrategy st = strategy == "sequential" ? SampleStrategy::sequential : SampleStrategy::binary;
      nlohmann::json walks = nlohmann::json::array();
      if (format == "csv") out << "walk,step,label\n";
      for (std::size_t d = 0; d < draws; ++d) {
        const WalkSample w = sampler.draw(st);
        if (format == "json") {
          walks.push_back(w.labels);
        } else if (format == "csv") {
          for (std::size_t i = 0; i < w.labels.size(); ++i) out << d << "," << i << "," << w.labels[i] << "\n";
        } else {
          for (std::size_t i = 0; i < w.labels.size(); ++i) out << (i ? " " : "") << w.labels[i];
          out << "\n";
        }
      }
      if (format == "json")
        out << nlohmann::json{{"system", spec.name}, {"n", n}, {"seed", seed}, {"strategy", strategy}, {"walks", walks}}
                   .dump(2)
            << "\n";
      return 0;
    }

    if (classify_cmd->parsed()) {
      const EcoSpec spec = load(src);
      ClassifyOptions opts;
      opts.verify_order = order;
      const ClassificationReport r = classify(spec, opts);
      if (format == "json") {
        out << report_json(r);
      } else {
        out << "system " << r.system << "\n";
        out << "finite labels: " << (r.labels.finite ? "yes (" + std::to_string(r.labels.labels.size()) + ")" : "no")
            << "\n";
        if (r.affine) {
          const Rat& beta = r.affine->beta;
          out << "affine sigma: " << to_string(r.affine->alpha) << "*k " << (beta < 0 ? "- " : "+ ") << to_string(Rat(abs(beta)))
              << "\n";
        }
        if (r.parity) out << "parity-affine: m = " << r.parity->m << "\n";
        if (r.bounded_linear) out << "bounded-linear form: " << r.bounded_linear->jumps.size() << " linear successors\n";
        if (r.factorial)
          out << "factorial walk: |A| = " << r.factorial->A.size() << ", b = " << r.factorial->b
              << ", C " << (r.factorial->C.empty() ? "empty" : "nonempty") << "\n";
        for (const auto& v : r.radius_zero)
          out << "radius zero (b = " << v.b << "): " << verdict_name(v.kind) << " (" << v.reason << ")\n";
        out << "linearly bounded: "
            << (r.linear_bound.bounded ? "yes, slope " + std::to_string(r.linear_bound.slope) : "no (" + r.linear_bound.reason + ")")
            << "\n";
        const auto cf = r.closed_form();
        out << "closed form: " << (cf ? cf->to_string() : "none") << "\n";
        for (const auto& m : r.mismatches) out << "mismatch: " << m << "\n";
        for (const auto& m : r.notes) out << "note: " << m << "\n";
      }
      return r.mismatches.empty() ? 0 : 1;
    }

    if (gf->parsed()) {
      const EcoSpec spec = load(src);
      const auto form = factorial_form(spec);
      if (!form) throw ValidationError("system is not a factorial walk");
      const KernelPoly kp = build_kernel(*form, order);
      const GFResult r = kernel_gfs(kp, order);
      const Series engine = series_F(spec, order);
      const bool ok = first_difference(r.F1, engine) < 0;
      if (format == "json") {
        auto doc = nlohmann::json::parse(gf_json(kp, r));
        doc["system"] = spec.name;
        doc["engine_agrees"] = ok;
        out << doc.dump(2) << "\n";
      } else {
        out << "system " << spec.name << " (a = " << form->a << ", b = " << form->b << ")\n";
        out << "F(z,1): " << join(r.F1) << "\n";
        out << "F(z,0): " << join(r.F0) << "\n";
        out << "engine agrees: " << (ok ? "yes" : "no") << "\n";
        out << "excursion formula: "
            << (r.positive_b_formula ? "(-1)^b/z prod u_i" : r.zero_b_formula ? "prod u_i/(1 + z - p_0 z)" : "neither")
            << "\n";
      }
      return ok ? 0 : 1;
    }

    if (guess->parsed()) {
      const EcoSpec spec = load(src);
      const Series s = series_F(spec, order);
      std::optional<RationalGuess> rg;
      std::optional<AlgebraicGuess> ag;
      if (s.order() >= 2 * static_cast<std::size_t>(dmax) + holdout + 2) rg = guess_rational(s, dmax, holdout);
      if (!rg && s.order() >= static_cast<std::size_t>((dz + 1) * (dF + 1)) + holdout) ag = guess_algebraic(s, dz, dF, holdout);
      if (format == "json") {
        out << guess_json(rg, ag);
      } else {
        out << "rational: " << (rg ? rg->f.to_string() : "none") << "\n";
        out << "algebraic: " << (ag ? ag->to_string() + " = 0" : "none") << "\n";
      }
      return 0;
    }

    if (cat->parsed()) {
      if (list) {
        for (const auto& e : catalog()) out << e.name << "\t" << e.seq_id << "\t" << e.title << "\n";
        return 0;
      }
      const CatalogReport r = catalog_verify(names);
      out << (format == "json" ? catalog_report_json(r) : catalog_report_text(r));
      return r.pass() ? 0 : 1;
    }

    if (bench->parsed()) {
      if (src.system.empty() && src.file.empty()) src.system = task == "count" ? "catalan" : "motzkin";
      const EcoSpec spec = load(src);
      using clock = std::chrono::steady_clock;
      auto secs = [](clock::time_point a) { return std::chrono::duration<double>(clock::now() - a).count(); };
      if (task == "count") {
        auto t0 = clock::now();
        const CountTable fast = count_levels(spec, n);
        const double t_fast = secs(t0);
        CountOptions naive_opts;
        naive_opts.naive = true;
        t0 = clock::now();
        const CountTable slow = count_levels(spec, n, naive_opts);
        const double t_slow = secs(t0);
        out << "count " << spec.name << " n=" << n << "\n";
        out << "range:  " << t_fast << " s, " << fast.stats.big_additions << " additions, peak " << fast.stats.peak_cells
            << " cells\n";
        out << "naive:  " << t_slow << " s, " << slow.stats.big_additions << " additions\n";
        out << "totals agree: " << (fast.totals == slow.totals ? "yes" : "no") << "\n";
        return fast.totals == slow.totals ? 0 : 1;
      }
      auto t0 = clock::now();
      auto table = std::make_shared<const BackTable>(back_table(spec, n));
      const double t_table = secs(t0);
      Sampler a(spec, table, seed), b(spec, table, seed);
      t0 = clock::now();
      const WalkSample wb = a.draw(SampleStrategy::binary);
      const double t_bin = secs(t0);
      t0 = clock::now();
      const WalkSample ws = b.draw(SampleStrategy::sequential);
      const double t_seq = secs(t0);
      out << "sample " << spec.name << " n=" << n << "\n";
      out << "table:      " << t_table << " s, " << table->cells() << " cells\n";
      out << "binary:     " << t_bin << " s\n";
      out << "sequential: " << t_seq << " s\n";
      out << "same walk: " << (wb.labels == ws.labels ? "yes" : "no") << "\n";
      return wb.labels == ws.labels ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ecogen
