// Copyright 2026 The tailfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tailfit/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tailfit/binning.hpp"
#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/ingestion.hpp"
#include "tailfit/io.hpp"
#include "tailfit/parallel.hpp"
#include "tailfit/report.hpp"
#include "tailfit/synthesis.hpp"

namespace tailfit {

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open '" + path + "' for reading");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

OutputFormat format_or(const std::string& name, OutputFormat fallback) {
  return name.empty() ? fallback : parse_output_format(name);
}

// Sample transforms shared by bin and fit.
struct SampleOptions {
  std::string input = "-";
  std::optional<double> rescale;
  std::optional<double> quantize;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "Duration file, '-' for stdin");
    cmd->add_option("--rescale", rescale, "Multiply every duration by this factor")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--quantize", quantize,
                    "Truncate durations to multiples of this step, dropping zeros")
        ->check(CLI::PositiveNumber);
  }

  DurationSample load(Streams& io) const {
    Input source(input, io.in);
    DurationSample s(read_durations(source.get()));
    if (rescale) s = tailfit::rescale(s, *rescale);
    if (quantize) {
      auto q = tailfit::quantize(s, *quantize);
      if (q.dropped > 0) {
        io.err << "tailfit: note: quantization dropped " << q.dropped
               << " values below " << format_double(*quantize) << '\n';
      }
      s = std::move(q.sample);
    }
    return s;
  }
};

struct BinOptions {
  std::optional<double> width;
  double origin = 0.0;
  std::optional<std::size_t> bins;
  std::optional<int> log_bins;

  void add_to(CLI::App* cmd, bool required) {
    auto* w = cmd->add_option("--width", width, "Linear bins of this width")
                  ->check(CLI::PositiveNumber);
    cmd->add_option("--origin", origin, "Left edge anchoring --width bins")
        ->needs(w);
    auto* m = cmd->add_option("--bins", bins, "Number of linear bins over [min, max]")
                  ->check(CLI::PositiveNumber);
    auto* l = cmd->add_option("--log-bins", log_bins, "Logarithmic bins per decade")
                  ->check(CLI::PositiveNumber);
    w->excludes(m)->excludes(l);
    m->excludes(l);
    if (required) {
      cmd->callback([cmd] {
        if (cmd->count("--width") + cmd->count("--bins") + cmd->count("--log-bins") == 0) {
          throw CLI::RequiredError("one of --width, --bins, --log-bins");
        }
      });
    }
  }

  bool any() const { return width || bins || log_bins; }

  Histogram build(const DurationSample& s) const {
    if (width) return bin_width(s, *width, origin);
    if (bins) return bin_linear(s, *bins);
    return bin_log(s, *log_bins);
  }
};

// ---- commands -------------------------------------------------------------

struct IngestCommand {
  std::string events;
  std::string direction;
  std::string output;
  std::string summary;
  std::optional<double> split_step;
  std::optional<double> split_epoch;
  bool precomputed = false;

  void run(Streams& io, const std::string& format) const {
    DurationOptions options;
    if (!direction.empty()) {
      options.direction = parse_direction(direction);
      if (!options.direction) {
        throw ParameterError("unknown direction '" + direction + "'");
      }
    }
    if (split_epoch && !split_step) {
      throw ParameterError("--split-epoch needs --split-step");
    }
    if (split_step && (output.empty() || output == "-")) {
      throw ParameterError("--split-step writes one file per class and needs --output");
    }
    const OutputFormat fmt = format_or(format, OutputFormat::csv);

    Input source(events, io.in);
    if (precomputed) {
      if (split_step || options.direction) {
        throw ParameterError("--precomputed takes no --split-step or --direction");
      }
      IngestSummary s;
      const Durations d = parse_precomputed(source.get(), s);
      Output sink(output, io.out);
      write_durations(sink.get(), d.values, fmt);
      sink.finish();
      emit_summary(io, s);
      return;
    }
    EventLog log = parse_events(source.get());
    if (split_step) {
      ResolutionRule rule;
      rule.step = *split_step;
      rule.epoch = split_epoch;
      const auto parts = split_by_resolution(log, rule, options);
      std::size_t emitted = 0, zeros = 0;
      for (const auto& part : parts) {
        Output sink(output + "." + part.label, io.out);
        write_durations(sink.get(), part.sample.values(), fmt);
        sink.finish();
        emitted += part.sample.size();
        zeros += part.zero_gaps_dropped;
      }
      log.summary().durations_emitted = emitted;
      log.summary().zero_gaps_dropped = zeros;
    } else {
      const Durations d = interevent_durations(log, options);
      Output sink(output, io.out);
      write_durations(sink.get(), d.values, fmt);
      sink.finish();
    }

    emit_summary(io, log.summary());
  }

  void emit_summary(Streams& io, const IngestSummary& s) const {
    nlohmann::ordered_json j;
    j["events_read"] = s.events_read;
    j["events_dropped"] = s.events_dropped;
    j["actors"] = s.actors;
    j["durations_emitted"] = s.durations_emitted;
    j["zero_gaps_dropped"] = s.zero_gaps_dropped;
    if (summary.empty()) {
      io.err << j.dump() << '\n';
    } else {
      Output sink(summary, io.out);
      sink.get() << j.dump() << '\n';
      sink.finish();
    }
  }
};

struct SimulateCommand {
  std::string kind;
  std::string output;
  std::uint64_t seed = 1;
  std::size_t count = 0;
  double mu = 0.0, sigma = 1.0, gamma = 2.0, tau = 1.0;
  double s0 = 1.0, xi_mean = 0.0, xi_sd = 0.1;
  std::size_t steps = 1, agents = 1, actors = 1, events = 0;
  bool final_only = false;

  void run(Streams& io, const std::string& format) const {
    const SeededGenerator gen(seed);
    Output sink(output, io.out);
    std::ostream& out = sink.get();
    if (kind == "lognormal" || kind == "powerlaw" || kind == "expexp") {
      if (count == 0) throw EmptySampleError("requested a sample of size 0");
      std::vector<double> values;
      if (kind == "lognormal") {
        values = draw_lognormal(LognormalModel(mu, sigma), count, gen);
      } else if (kind == "powerlaw") {
        values = draw_powerlaw(PowerLawModel(gamma, tau), count, gen);
      } else {
        values = draw_exp_of_exponential(gamma, tau, count, gen);
      }
      write_durations(out, values, format_or(format, OutputFormat::csv));
    } else if (kind == "gibrat") {
      GibratProcess p;
      p.s0 = s0;
      p.steps = steps;
      p.agents = agents;
      p.log_factor = LogFactorLaw::normal(xi_mean, xi_sd);
      const auto t = run_gibrat(p, gen);
      out << "agent,step,size\n";
      for (std::size_t a = 0; a < t.agents(); ++a) {
        for (std::size_t k = final_only ? t.steps() : 0; k <= t.steps(); ++k) {
          out << a << ',' << k << ',' << format_double(t.size(a, k)) << '\n';
        }
      }
    } else {
      if (events == 0) throw EmptySampleError("requested an empty event log");
      write_synthetic_event_log(out, actors, events, LognormalModel(mu, sigma),
                                gen);
    }
    sink.finish();
  }
};

struct BinCommand {
  SampleOptions sample;
  BinOptions bins;
  std::string output;

  void run(Streams& io, const std::string& format) const {
    const DurationSample s = sample.load(io);
    const Histogram h = bins.build(s);
    Output sink(output, io.out);
    write_histogram(sink.get(), h, format_or(format, OutputFormat::csv));
    sink.finish();
  }
};

void write_row(std::ostream& out, const TableRow& row, OutputFormat format) {
  const auto j = to_json(row);
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < std::size(kJsonKeys); ++i) {
      out << (i ? "," : "") << kJsonKeys[i];
    }
    out << '\n';
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << (i++ ? "," : "");
      if (value.is_string()) {
        out << value.get<std::string>();
      } else if (value.is_number_unsigned()) {
        out << value.get<std::uint64_t>();
      } else if (value.is_number()) {
        out << format_double(value.get<double>());
      }
    }
    out << '\n';
  } else if (format == OutputFormat::jsonl) {
    out << j.dump() << '\n';
  } else {
    throw ParameterError("fit results are written as jsonl or csv");
  }
}

struct FitCommand {
  SampleOptions sample;
  BinOptions bins;
  std::string dist = "both";
  std::size_t bootstrap = 0;
  std::uint64_t seed = 1;
  std::optional<double> xmin;
  std::size_t min_tail = 50;
  double threshold = kDefaultVerdictThreshold;
  std::string output;

  void run(Streams& io, const std::string& format) const {
    if (dist != "powerlaw" && dist != "lognormal" && dist != "both") {
      throw ParameterError("--dist must be powerlaw, lognormal or both");
    }
    if (bootstrap != 0 && bootstrap < kMinBootstrapReps) {
      throw ParameterError("--bootstrap needs at least " +
                           std::to_string(kMinBootstrapReps) + " replicates");
    }
    const OutputFormat fmt = format_or(format, OutputFormat::jsonl);
    const DurationSample s = sample.load(io);
    std::optional<Histogram> h;
    if (bins.any()) h = bins.build(s);

    PowerLawFitOptions pl_options;
    pl_options.min_tail = min_tail;
    pl_options.xmin = xmin;
    BinnedFitOptions binned_options;
    binned_options.min_tail = min_tail;
    binned_options.xmin = xmin;

    TableRow row;
    row.n = s.size();
    if (dist != "lognormal") {
      FitReport pl = h ? fit_binned(*h, Family::powerlaw, binned_options)
                       : fit_powerlaw_tail(s, pl_options);
      if (bootstrap > 0) {
        const SeededGenerator gen(seed, 1);
        pl.p_value = h ? bootstrap_goodness_of_fit(*h, pl, bootstrap, gen,
                                                   binned_options).p_value
                       : bootstrap_goodness_of_fit(s, pl, bootstrap, gen,
                                                   pl_options).p_value;
      }
      row.powerlaw = pl;
    }
    if (dist != "powerlaw") {
      // With both families the lognormal is fitted on the power-law tail.
      std::optional<double> ln_xmin = row.powerlaw ? row.powerlaw->xmin : xmin;
      FitReport ln = [&] {
        if (h) {
          BinnedFitOptions o = binned_options;
          o.xmin = ln_xmin;
          return fit_binned(*h, Family::lognormal, o);
        }
        LognormalFitOptions o;
        o.xmin = ln_xmin;
        return fit_lognormal(s, o);
      }();
      if (bootstrap > 0 && !row.powerlaw) {
        const SeededGenerator gen(seed, 2);
        BinnedFitOptions o = binned_options;
        o.xmin = ln_xmin;
        LognormalFitOptions lo;
        lo.xmin = ln_xmin;
        ln.p_value = h ? bootstrap_goodness_of_fit(*h, ln, bootstrap, gen, o).p_value
                       : bootstrap_goodness_of_fit(s, ln, bootstrap, gen, {}, lo)
                             .p_value;
      }
      row.lognormal = ln;
    }
    if (row.powerlaw && row.lognormal) {
      row.comparison = compare_families(s, *row.powerlaw->xmin, threshold);
    }
    Output sink(output, io.out);
    write_row(sink.get(), row, fmt);
    sink.finish();
  }
};

struct CompareCommand {
  SampleOptions sample;
  std::optional<double> xmin;
  std::size_t min_tail = 50;
  double threshold = kDefaultVerdictThreshold;
  std::string output;

  void run(Streams& io, const std::string& format) const {
    const DurationSample s = sample.load(io);
    double cut = 0.0;
    if (xmin) {
      cut = *xmin;
    } else {
      PowerLawFitOptions o;
      o.min_tail = min_tail;
      cut = *fit_powerlaw_tail(s, o).xmin;
    }
    TableRow row;
    row.n = s.size();
    row.comparison = compare_families(s, cut, threshold);
    Output sink(output, io.out);
    write_row(sink.get(), row, format_or(format, OutputFormat::jsonl));
    sink.finish();
  }
};

struct ReportCommand {
  std::vector<std::string> inputs;
  std::string table = "md";
  double threshold = kDefaultVerdictThreshold;
  std::string output;

  // Returns false when no input row was usable.
  bool run(Streams& io) const {
    const TableStyle style = parse_table_style(table);
    std::vector<nlohmann::json> rows;
    for (const auto& path : inputs) {
      Input source(path, io.in);
      std::string line;
      std::size_t number = 0;
      while (std::getline(source.get(), line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        std::optional<std::string> problem =
            j.is_discarded() ? std::optional<std::string>("invalid JSON")
                             : schema_error(j);
        if (problem) {
          io.err << "tailfit: skipped: " << path << ':' << number << ": "
                 << *problem << '\n';
          continue;
        }
        rows.push_back(j);
      }
    }
    Output sink(output, io.out);
    write_table(sink.get(), rows, style, threshold);
    sink.finish();
    return !rows.empty();
  }
};

int report_error(std::ostream& err, std::string_view code,
                 const std::string& message, int status) {
  std::string one_line = message;
  for (char& c : one_line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  err << "tailfit: " << code << ": " << one_line << '\n';
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"Fit, compare and simulate power-law and lognormal duration data",
               "tailfit"};
  app.require_subcommand(1);
  std::optional<std::size_t> threads;
  std::string format;
  app.add_option("--threads", threads, "Worker threads (default: TAILFIT_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format: csv, jsonl or bin")
      ->check(CLI::IsMember({"csv", "jsonl", "bin"}));

  IngestCommand ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Event log to pooled inter-event durations");
  ingest_cmd->add_option("--events", ingest.events, "CSV actor,timestamp[,direction], '-' for stdin")
      ->required();
  ingest_cmd->add_option("--direction", ingest.direction, "Keep only outbound or inbound events");
  ingest_cmd->add_option("-o,--output", ingest.output, "Duration file (default stdout)");
  ingest_cmd->add_flag("--precomputed", ingest.precomputed,
                       "Input holds one duration per line instead of events");
  ingest_cmd->add_option("--summary", ingest.summary, "Summary JSON file (default stderr)");
  ingest_cmd->add_option("--split-step", ingest.split_step,
                         "Split by storage resolution of this many seconds")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--split-epoch", ingest.split_epoch,
                         "Events before this timestamp are coarse");

  SimulateCommand simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw synthetic data");
  simulate_cmd->require_subcommand(1);
  simulate_cmd->add_option("--seed", simulate.seed, "64-bit seed");
  simulate_cmd->add_option("-o,--output", simulate.output, "Output file (default stdout)");
  simulate_cmd->fallthrough();
  auto add_count = [&](CLI::App* c) {
    c->add_option("-n,--count", simulate.count, "Sample size")->required();
  };
  auto* sim_ln = simulate_cmd->add_subcommand("lognormal", "Lognormal sample");
  sim_ln->add_option("--mu", simulate.mu)->required();
  sim_ln->add_option("--sigma", simulate.sigma)->required()->check(CLI::PositiveNumber);
  add_count(sim_ln);
  auto* sim_pl = simulate_cmd->add_subcommand("powerlaw", "Power-law sample by inversion");
  auto* sim_ee = simulate_cmd->add_subcommand(
      "expexp", "Power-law sample as the exponential of an exponential");
  for (auto* c : {sim_pl, sim_ee}) {
    c->add_option("--gamma", simulate.gamma)->required();
    c->add_option("--tau", simulate.tau)->required()->check(CLI::PositiveNumber);
    add_count(c);
  }
  auto* sim_gb = simulate_cmd->add_subcommand("gibrat", "Multiplicative growth trajectories");
  sim_gb->add_option("--s0", simulate.s0, "Initial size")->check(CLI::PositiveNumber);
  sim_gb->add_option("--steps", simulate.steps)->required()->check(CLI::PositiveNumber);
  sim_gb->add_option("--agents", simulate.agents)->required()->check(CLI::PositiveNumber);
  sim_gb->add_option("--xi-mean", simulate.xi_mean, "Mean of the log-factor");
  sim_gb->add_option("--xi-sd", simulate.xi_sd, "Standard deviation of the log-factor")
      ->check(CLI::NonNegativeNumber);
  sim_gb->add_flag("--final-only", simulate.final_only, "Only the last step");
  auto* sim_ev = simulate_cmd->add_subcommand("events", "Synthetic event log CSV");
  sim_ev->add_option("--actors", simulate.actors)->required()->check(CLI::PositiveNumber);
  sim_ev->add_option("--events", simulate.events)->required()->check(CLI::PositiveNumber);
  sim_ev->add_option("--mu", simulate.mu, "Gap lognormal mu")->required();
  sim_ev->add_option("--sigma", simulate.sigma, "Gap lognormal sigma")
      ->required()->check(CLI::PositiveNumber);
  for (auto* c : {sim_ln, sim_pl, sim_ee, sim_gb, sim_ev}) {
    c->fallthrough();
    c->callback([&simulate, c] { simulate.kind = c->get_name(); });
  }

  BinCommand bin;
  auto* bin_cmd = app.add_subcommand("bin", "Histogram CSV of a duration sample");
  bin.sample.add_to(bin_cmd);
  bin.bins.add_to(bin_cmd, true);
  bin_cmd->add_option("-o,--output", bin.output, "Output file (default stdout)");

  FitCommand fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one or both families (one table row)");
  fit.sample.add_to(fit_cmd);
  fit.bins.add_to(fit_cmd, false);
  fit_cmd->add_option("--dist", fit.dist, "powerlaw, lognormal or both")
      ->check(CLI::IsMember({"powerlaw", "lognormal", "both"}));
  fit_cmd->add_option("--bootstrap", fit.bootstrap, "Bootstrap replicates (0 = none, else >= 100)");
  fit_cmd->add_option("--seed", fit.seed, "64-bit seed");
  fit_cmd->add_option("--xmin", fit.xmin, "Impose the tail cutoff")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--min-tail", fit.min_tail, "Smallest admissible tail")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  fit_cmd->add_option("--threshold", fit.threshold, "Verdict significance level")
      ->check(CLI::Range(0.0, 1.0));
  fit_cmd->add_option("-o,--output", fit.output, "Output file (default stdout)");

  CompareCommand compare;
  auto* compare_cmd = app.add_subcommand("compare", "Likelihood-ratio test, power law vs lognormal");
  compare.sample.add_to(compare_cmd);
  compare_cmd->add_option("--xmin", compare.xmin, "Tail cutoff (default: power-law KS scan)")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--min-tail", compare.min_tail, "Smallest admissible tail")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  compare_cmd->add_option("--threshold", compare.threshold, "Verdict significance level")
      ->check(CLI::Range(0.0, 1.0));
  compare_cmd->add_option("-o,--output", compare.output, "Output file (default stdout)");

  ReportCommand report;
  auto* report_cmd = app.add_subcommand("report", "Table from fit JSON rows");
  report_cmd->add_option("inputs", report.inputs, "Files of fit JSON rows ('-' for stdin)")
      ->required();
  report_cmd->add_option("--table", report.table, "md or csv")
      ->check(CLI::IsMember({"md", "markdown", "csv"}));
  report_cmd->add_option("--threshold", report.threshold, "Verdict significance level")
      ->check(CLI::Range(0.0, 1.0));
  report_cmd->add_option("-o,--output", report.output, "Output file (default stdout)");

  std::vector<const char*> argv{"tailfit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage_error", e.what(), kExitFailure);
  }

  try {
    if (threads) set_max_threads(*threads);
    if (*ingest_cmd) {
      ingest.run(io, format);
    } else if (*simulate_cmd) {
      simulate.run(io, format);
    } else if (*bin_cmd) {
      bin.run(io, format);
    } else if (*fit_cmd) {
      fit.run(io, format);
    } else if (*compare_cmd) {
      compare.run(io, format);
    } else if (*report_cmd) {
      if (!report.run(io)) {
        return report_error(err, "empty_report", "no valid input rows",
                            kExitDegenerate);
      }
    }
  } catch (const DegenerateSampleError& e) {
    return report_error(err, "degenerate_sample", e.what(), kExitDegenerate);
  } catch (const InsufficientDataError& e) {
    return report_error(err, "insufficient_data", e.what(), kExitDegenerate);
  } catch (const EmptySampleError& e) {
    return report_error(err, "empty_sample", e.what(), kExitDegenerate);
  } catch (const IoError& e) {
    return report_error(err, "io_error", e.what(), kExitFailure);
  } catch (const ParameterError& e) {
    return report_error(err, "parameter_error", e.what(), kExitFailure);
  } catch (const DomainError& e) {
    return report_error(err, "domain_error", e.what(), kExitFailure);
  } catch (const ConvergenceError& e) {
    return report_error(err, "convergence_error", e.what(), kExitFailure);
  } catch (const std::exception& e) {
    return report_error(err, "internal_error", e.what(), kExitFailure);
  }
  return kExitOk;
}

}  // namespace tailfit
