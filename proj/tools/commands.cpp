// Copyright 2026 The gidl Authors
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


#include "commands.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <type_traits>
#include <variant>

#include <omp.h>

#include "gidl/completion.hpp"
#include "gidl/data.hpp"
#include "gidl/learner.hpp"
#include "gidl/metrics.hpp"
#include "gidl/toeplitz.hpp"

#ifndef GIDL_VERSION_STRING
#define GIDL_VERSION_STRING "unknown"
#endif

namespace gidl::cli {

namespace {

using nlohmann::json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp + " for writing");
    out << text;
    if (!out) throw DataError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move " + tmp + " to " + path + ": " + ec.message());
}

void write_json(const std::string& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

class Manifest {
 public:
  Manifest(const Context& ctx, std::string subcommand) : started_(utc_now()) {
    j_["subcommand"] = std::move(subcommand);
    j_["argv"] = ctx.argv;
    j_["version"] = GIDL_VERSION_STRING;
    j_["threads"] = ctx.threads;
  }
  json& config() { return j_["config"]; }
  void seed(std::uint64_t s) { j_["seed"] = s; }
  void output(const std::string& path) {
    if (!path.empty()) outputs_.push_back(path);
  }
  // Written next to the first output.
  void finish() {
    if (outputs_.empty()) return;
    j_["started"] = started_;
    j_["finished"] = utc_now();
    j_["outputs"] = outputs_;
    write_json(outputs_.front() + ".manifest.json", j_);
  }

 private:
  json j_;
  std::string started_;
  std::vector<std::string> outputs_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

GroupModel resolve_group(const std::string& group_name, Index signal_length) {
  try {
    return GroupModel::parse(group_name, signal_length);
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
}

// Signal length of a vector dataset, from its first row.
Index csv_width(const std::string& path) { return read_csv(path).cols(); }

SolverConfig solver_config(const SolverFlags& f) {
  SolverConfig cfg;
  cfg.lambda = f.lambda;
  cfg.max_iters = f.inner_iters;
  cfg.dykstra_inner_iters = f.dykstra_iters;
  cfg.warm_start = !f.cold_start;
  try {
    cfg.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

json solver_json(const SolverConfig& cfg) {
  return {{"lambda", cfg.lambda},
          {"max_iters", cfg.max_iters},
          {"eta0", cfg.line_search.eta0},
          {"beta", cfg.line_search.beta},
          {"c", cfg.line_search.c},
          {"dykstra_inner_iters", cfg.dykstra_inner_iters},
          {"warm_start", cfg.warm_start},
          {"enforce_feasible", cfg.enforce_feasible}};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json code_json(const CodingVariable& z) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, RegularCode>) {
          return {{"c", c.c}};
        } else if constexpr (std::is_same_v<T, ShiftCode>) {
          return {{"x", std::vector<double>(c.x.data(), c.x.data() + c.x.size())}};
        } else if constexpr (std::is_same_v<T, CtsCode>) {
          auto split = [](const CVec& v) {
            std::vector<std::array<double, 2>> out;
            for (Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
            return out;
          };
          return {{"z_plus", c.z_plus}, {"bz_plus", split(c.bz_plus)}, {"z_minus", c.z_minus},
                  {"bz_minus", split(c.bz_minus)}};
        } else {
          std::vector<double> flat;
          for (Index r = 0; r < c.Z.rows(); ++r) {
            for (Index k = 0; k < c.Z.cols(); ++k) flat.push_back(c.Z(r, k));
          }
          return {{"Z", flat}, {"rows", c.Z.rows()}};
        }
      },
      z);
}

// Reads data for a group given by name, inferring the signal length.
std::pair<GroupModel, Dataset> load_data(const std::string& path, const std::string& group_name) {
  if (group_name.rfind("orth:", 0) == 0) {
    const GroupModel g = resolve_group(group_name, 0);
    return {g, read_dataset(path, g)};
  }
  const Mat rows = read_csv(path);
  const GroupModel g = resolve_group(group_name, rows.cols());
  return {g, dataset_from_rows(rows)};
}

}  // namespace

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  require(dots != std::string::npos, "range must look like A..B, got '" + text + "'");
  try {
    std::size_t used = 0;
    const long a = std::stol(text.substr(0, dots), &used);
    require(used == dots, "bad range start in '" + text + "'");
    const std::string rest = text.substr(dots + 2);
    const long b = std::stol(rest, &used);
    require(used == rest.size(), "bad range end in '" + text + "'");
    require(0 <= a && a <= b, "range must satisfy 0 <= A <= B");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse range '" + text + "'");
  }
}

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    require(*flag >= 1, "--threads must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("GIDL_THREADS")) {
    try {
      const int n = std::stoi(env);
      require(n >= 1, "GIDL_THREADS must be >= 1");
      return n;
    } catch (const std::logic_error&) {
      throw UsageError(std::string("cannot parse GIDL_THREADS='") + env + "'");
    }
  }
  return 0;
}

int cmd_gen(const Context& ctx, const GenOptions& o) {
  require(!o.out.empty(), "gen: --out is required");
  Manifest man(ctx, "gen");
  man.seed(o.seed);
  man.config() = {{"model", o.model}, {"seed", o.seed}};
  if (o.model == "shift") {
    require(o.d >= 1 && o.q >= 1 && o.s >= 1 && o.n >= 1, "gen shift: d, q, s, n must be >= 1");
    const ShiftDataset ds = gen_shift_dataset({o.d, o.q, o.s, o.n, o.seed});
    man.config().update({{"d", o.d}, {"q", o.q}, {"s", o.s}, {"n", o.n}});
    write_dataset(o.out, ds.data);
    man.output(o.out);
    if (!o.truth_out.empty()) {
      write_generators(o.truth_out, ds.truth);
      man.output(o.truth_out);
    }
  } else if (o.model == "sync") {
    require(o.d >= 1 && o.r >= 1 && o.n >= 1 && o.q >= 1 && o.sigma >= 0.0, "gen sync: invalid d, r, n, q or sigma");
    const SyncDataset ds = gen_sync_dataset({o.d, o.r, o.n, o.sigma, o.q, o.seed});
    man.config().update({{"d", o.d}, {"r", o.r}, {"n", o.n}, {"q", o.q}, {"sigma", o.sigma}});
    write_dataset(o.out, ds.data);
    man.output(o.out);
    man.output(sidecar_path(o.out));
    if (!o.truth_out.empty()) {
      write_generators(o.truth_out, ds.truth);
      write_sidecar(sidecar_path(o.truth_out), {o.d, o.r, o.q});
      man.output(o.truth_out);
    }
    if (!o.latents_out.empty()) {
      json lat = json::array();
      for (const SyncLatent& l : ds.latents) {
        json rots = json::array();
        for (const Mat& g : l.rotations) {
          std::vector<double> flat;
          for (Index a = 0; a < g.rows(); ++a) {
            for (Index b = 0; b < g.cols(); ++b) flat.push_back(g(a, b));
          }
          rots.push_back(flat);
        }
        lat.push_back({{"c", l.coefficients}, {"G", rots}});
      }
      write_json(o.latents_out, lat);
      man.output(o.latents_out);
    }
  } else if (o.model == "ecg") {
    require(o.length >= 1 && o.rate > 0.0, "gen ecg: --len and --rate must be positive");
    EcgConfig cfg;
    cfg.length = o.length;
    cfg.rate_hz = o.rate;
    cfg.seed = o.seed;
    man.config().update({{"length", o.length}, {"rate_hz", o.rate}});
    write_csv(o.out, synth_ecg_like(cfg));
    man.output(o.out);
  } else {
    throw UsageError("gen: --model must be shift, sync or ecg");
  }
  man.finish();
  return 0;
}

int cmd_segment(const Context& ctx, const SegmentOptions& o) {
  require(!o.in.empty() && !o.out.empty(), "segment: --in and --out are required");
  require(o.window >= 1 && o.stride >= 1, "segment: --window and --stride must be >= 1");
  SegmentationConfig cfg;
  cfg.window = o.window;
  cfg.stride = o.stride;
  cfg.zero_mean = !o.no_zero_mean;
  cfg.unit_norm = !o.no_unit_norm;
  if (!o.peak_window.empty()) cfg.peak_window = parse_range(o.peak_window);
  const Vec series = read_series(o.in);
  if (series.size() < cfg.window) throw DataError(o.in + ": series is shorter than the window");
  Segments seg = segment_series(series, cfg);
  if (seg.dropped_zero > 0) std::cerr << "warning: dropped " << seg.dropped_zero << " all-zero windows\n";
  if (o.max_rows > 0 && seg.rows.rows() > o.max_rows) seg.rows = Mat(seg.rows.topRows(o.max_rows));
  if (seg.rows.rows() == 0) throw DataError("segment: no windows survived the filters");
  write_csv(o.out, seg.rows);
  Manifest man(ctx, "segment");
  man.config() = {{"window", o.window}, {"stride", o.stride}, {"zero_mean", cfg.zero_mean},
                  {"unit_norm", cfg.unit_norm}, {"peak_window", o.peak_window}, {"max_rows", o.max_rows},
                  {"rows", seg.rows.rows()}, {"dropped_zero", seg.dropped_zero}, {"dropped_peak", seg.dropped_peak}};
  man.output(o.out);
  man.finish();
  return 0;
}

int cmd_train(const Context& ctx, const TrainOptions& o) {
  require(!o.data.empty() && !o.group.empty() && !o.out.empty(), "train: --data, --group and --out are required");
  require(o.q >= 1 && o.iters >= 0, "train: --q must be >= 1 and --iters >= 0");
  auto [g, data] = load_data(o.data, o.group);
  LearnOptions opts;
  opts.q = o.q;
  opts.outer_iters = o.iters;
  opts.seed = o.seed;
  opts.threads = ctx.threads;
  opts.objective_tol = o.tol;
  opts.record_timing = !o.no_timing;
  opts.distance_grid = o.grid;
  opts.solver = solver_config(o.solver);
  if (o.lambda_auto) opts.solver.lambda = lambda_auto(g, data, o.q, opts.solver, o.seed);
  if (!o.truth.empty()) opts.truth = read_generators(o.truth, g);
  if (!o.init.empty()) opts.init = read_generators(o.init, g);

  const LearnerState st = learn(g, data, opts);
  for (const std::string& w : st.warnings) std::cerr << "warning: " << w << "\n";

  Manifest man(ctx, "train");
  man.seed(o.seed);
  man.config() = {{"data", o.data}, {"group", g.name()}, {"q", o.q}, {"iters", o.iters},
                  {"solver", solver_json(opts.solver)}, {"lambda_auto", o.lambda_auto}, {"truth", o.truth},
                  {"tol", o.tol}, {"grid", o.grid}, {"timing", !o.no_timing}};
  write_generators(o.out, st.gens);
  if (g.kind() == GroupKind::Orthogonal) write_sidecar(sidecar_path(o.out), {g.dim(), g.cols(), o.q});
  man.output(o.out);
  if (!o.trace.empty()) {
    std::string text = "iter,objective,dist_to_truth,seconds\n";
    for (const TraceRow& row : st.history) {
      text += std::to_string(row.iter) + "," + fmt17(row.objective) + "," + (row.dist ? fmt17(*row.dist) : "") + "," +
              fmt17(row.seconds) + "\n";
    }
    write_text_atomic(o.trace, text);
    man.output(o.trace);
  }
  man.finish();
  return 0;
}

int cmd_code(const Context& ctx, const CodeOptions& o) {
  require(!o.data.empty() && !o.group.empty() && !o.gens.empty() && !o.out.empty(),
          "code: --data, --group, --gens and --out are required");
  auto [g, data] = load_data(o.data, o.group);
  const GeneratorSet gens = read_generators(o.gens, g);
  const SolverConfig cfg = solver_config(o.solver);
  std::vector<SampleCodes> codes(data.size());
  std::vector<CodingResult> results(data.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(ctx.threads > 0 ? ctx.threads : omp_get_max_threads())
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size()); ++i) {
    try {
      results[i] = code_sample(g, gens, data[i], cfg);
    } catch (...) {
#pragma omp critical(gidl_cmd_code)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Dataset fits;
  json samples = json::array();
  double total = 0.0;
  for (const CodingResult& r : results) {
    fits.push_back(r.fit);
    double norm = 0.0;
    json zs = json::array();
    for (const auto& z : r.codes) {
      norm += atomic_norm(g, z);
      zs.push_back(code_json(z));
    }
    samples.push_back({{"objective", r.objective}, {"norm", norm}, {"codes", zs}});
    total += r.objective;
  }
  Manifest man(ctx, "code");
  man.config() = {{"data", o.data}, {"group", g.name()}, {"gens", o.gens}, {"solver", solver_json(cfg)}};
  write_dataset(o.out, fits);
  man.output(o.out);
  if (!o.report.empty()) {
    write_json(o.report, {{"objective_total", total}, {"samples", samples}});
    man.output(o.report);
  }
  man.finish();
  return 0;
}

int cmd_complete(const Context& ctx, const CompleteOptions& o) {
  require(!o.data.empty() && !o.mask.empty() && !o.group.empty() && !o.gens.empty() && !o.out.empty(),
          "complete: --data, --mask, --group, --gens and --out are required");
  require(o.group.rfind("orth:", 0) != 0, "complete: matrix groups are not supported");
  require(o.stages >= 1 && o.factor > 0.0 && o.factor <= 1.0, "complete: need --stages >= 1 and 0 < --factor <= 1");
  auto [g, data] = load_data(o.data, o.group);
  const Mat mask = read_mask(o.mask);
  if (mask.rows() != static_cast<Index>(data.size()) || mask.cols() != g.dim()) {
    throw DataError(o.mask + ": mask shape does not match the data");
  }
  std::optional<Dataset> truth;
  if (!o.truth.empty()) {
    truth = read_dataset(o.truth, g);
    if (truth->size() != data.size()) throw DataError(o.truth + ": row count differs from the data");
  }
  const GeneratorSet gens = read_generators(o.gens, g);
  const SolverConfig cfg = solver_config(o.solver);

  std::vector<CompletionResult> results(data.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(ctx.threads > 0 ? ctx.threads : omp_get_max_threads())
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size()); ++i) {
    try {
      CompletionProblem p;
      p.y = data[i];
      p.mask = mask.row(i).transpose();
      p.cfg = cfg;
      p.stages = o.stages;
      p.factor = o.factor;
      if (p.mask.sum() <= 0.0) throw DataError("row " + std::to_string(i + 1) + " has no observed entries");
      results[i] = complete(g, gens, p);
    } catch (...) {
#pragma omp critical(gidl_cmd_complete)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Dataset completed;
  json rows = json::array();
  std::vector<double> errors;
  for (std::size_t i = 0; i < results.size(); ++i) {
    completed.push_back(results[i].y_opt);
    json row = {{"norm", results[i].norm_value}, {"violation", results[i].violation.back()}};
    if (truth) {
      const double e = relative_squared_error(results[i].y_opt, (*truth)[i]);
      row["relative_squared_error"] = e;
      errors.push_back(e);
    }
    rows.push_back(row);
  }
  Manifest man(ctx, "complete");
  man.config() = {{"data", o.data}, {"mask", o.mask}, {"group", g.name()}, {"gens", o.gens}, {"truth", o.truth},
                  {"stages", o.stages}, {"factor", o.factor}, {"solver", solver_json(cfg)}};
  write_dataset(o.out, completed);
  man.output(o.out);
  if (!o.report.empty()) {
    json rep = {{"samples", rows}};
    if (truth) {
      double sum = 0.0;
      for (double e : errors) sum += e;
      rep["relative_squared_errors"] = errors;
      rep["mean_relative_squared_error"] = sum / static_cast<double>(errors.size());
    }
    write_json(o.report, rep);
    man.output(o.report);
  }
  man.finish();
  return 0;
}

int cmd_dist(const Context& ctx, const DistOptions& o) {
  require(!o.group.empty() && !o.reference.empty() && !o.learned.empty(),
          "dist: --group, --reference and --learned are required");
  require(o.grid >= 1, "dist: --grid must be >= 1");
  const GroupModel g = o.group.rfind("orth:", 0) == 0 ? resolve_group(o.group, 0)
                                                      : resolve_group(o.group, csv_width(o.reference));
  const GeneratorSet ref = read_generators(o.reference, g);
  const GeneratorSet learned = read_generators(o.learned, g);
  const DistanceReport rep = dictionary_distance(g, ref, learned, o.grid);
  json matches = json::array();
  for (const OrbitMatch& m : rep.matches) {
    json jm = {{"learned", m.learned}, {"sign", m.sign}};
    if (g.is_shift_group()) jm["shift"] = m.shift;
    if (g.kind() == GroupKind::CtsShift) jm["phase"] = m.phase;
    if (g.kind() == GroupKind::Orthogonal) {
      std::vector<double> flat;
      for (Index a = 0; a < m.q.rows(); ++a) {
        for (Index b = 0; b < m.q.cols(); ++b) flat.push_back(m.q(a, b));
      }
      jm["q"] = flat;
    }
    matches.push_back(jm);
  }
  const json out = {{"group", g.name()}, {"per_generator", rep.per_generator}, {"mean", rep.mean}, {"matches", matches}};
  if (o.out.empty()) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  write_json(o.out, out);
  Manifest man(ctx, "dist");
  man.config() = {{"group", g.name()}, {"reference", o.reference}, {"learned", o.learned}, {"grid", o.grid}};
  man.output(o.out);
  man.finish();
  return 0;
}

int cmd_bench(const Context& ctx, const BenchOptions& o) {
  require(!o.data.empty() && !o.out.empty(), "bench: --data and --out are required");
  require(o.iters >= 1 && o.reps >= 3, "bench: need --iters >= 1 and --reps >= 3");
  Mat rows = read_csv(o.data);
  if (o.max_samples > 0 && rows.rows() > o.max_samples) rows = Mat(rows.topRows(o.max_samples));
  const Dataset data = dataset_from_rows(rows);
  const SolverConfig cfg = solver_config(o.solver);
  json results = json::array();
  std::stringstream list(o.groups);
  std::string group_name;
  while (std::getline(list, group_name, ',')) {
    require(group_name.rfind("orth:", 0) != 0, "bench: vector groups only");
    const GroupModel g = resolve_group(group_name, rows.cols());
    const CodingTiming t = time_coding(g, data, o.q, cfg, o.iters, o.reps, o.seed, ctx.threads);
    double mean = 0.0;
    for (double v : t.per_iteration) mean += v;
    mean /= static_cast<double>(t.per_iteration.size());
    double var = 0.0;
    for (double v : t.per_iteration) var += (v - mean) * (v - mean);
    var /= static_cast<double>(t.per_iteration.size() - 1);
    results.push_back({{"group", g.name()}, {"per_iteration_seconds", t.per_iteration}, {"mean", mean},
                       {"median", t.median()}, {"variance", var}});
  }
  Manifest man(ctx, "bench");
  man.seed(o.seed);
  man.config() = {{"data", o.data}, {"groups", o.groups}, {"q", o.q}, {"iters", o.iters}, {"reps", o.reps},
                  {"max_samples", o.max_samples}, {"solver", solver_json(cfg)}};
  write_json(o.out, {{"samples", data.size()}, {"results", results}});
  man.output(o.out);
  man.finish();
  return 0;
}

int cmd_project(const Context& ctx, const ProjectOptions& o) {
  require(!o.in.empty() && !o.out.empty(), "project: --in and --out are required");
  require(o.iters >= 1 && o.eps >= 0.0, "project: need --iters >= 1 and --eps >= 0");
  const Mat raw = read_csv(o.in);
  if (raw.cols() != 2 * raw.rows()) {
    throw DataError(o.in + ": expected n rows of 2n interleaved real/imaginary columns");
  }
  const Index n = raw.rows();
  CMat x(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) x(i, j) = cplx(raw(i, 2 * j), raw(i, 2 * j + 1));
  }
  HermitianMatrix h;
  try {
    h = HermitianMatrix::checked(x);
  } catch (const PreconditionError& e) {
    throw DataError(o.in + ": " + e.what());
  }
  Manifest man(ctx, "project");
  man.config() = {{"in", o.in}, {"mode", o.mode}, {"iters", o.iters}, {"eps", o.eps}, {"rank_tol", o.rank_tol}};
  if (o.mode == "vandermonde") {
    const VandermondeFactors f = vandermonde_decompose(h, o.rank_tol);
    write_json(o.out, {{"thetas", f.thetas}, {"weights", f.weights}});
  } else {
    CMat result;
    json extra;
    if (o.mode == "psd") {
      result = project_psd(h).matrix();
    } else if (o.mode == "toeplitz") {
      result = project_toeplitz(h).matrix();
    } else if (o.mode == "psd-toeplitz") {
      const DykstraResult r = project_psd_toeplitz(h, o.iters, o.eps);
      result = r.x.matrix();
      if (!r.converged) std::cerr << "warning: projection stopped after " << r.iterations << " sweeps without converging\n";
      man.config()["converged"] = r.converged;
      man.config()["sweeps"] = r.iterations;
    } else {
      throw UsageError("project: --mode must be psd, toeplitz, psd-toeplitz or vandermonde");
    }
    Mat out(n, 2 * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        out(i, 2 * j) = result(i, j).real();
        out(i, 2 * j + 1) = result(i, j).imag();
      }
    }
    write_csv(o.out, out);
  }
  man.output(o.out);
  man.finish();
  return 0;
}

}  // namespace gidl::cli
