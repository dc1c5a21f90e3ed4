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


// Command-line front end: dataset generation, training, coding, completion,
// distances, timing and the Toeplitz projections.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gidl/errors.hpp"

namespace {

using namespace gidl::cli;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--lambda", f.lambda, "Sparsity weight")->check(CLI::PositiveNumber);
  cmd->add_option("--inner-iters", f.inner_iters, "Solver iterations per sample")->check(CLI::PositiveNumber);
  cmd->add_option("--dykstra-iters", f.dykstra_iters, "Projection sweeps per solver step (ctsshift)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--cold-start", f.cold_start, "Start every coding pass from zero");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-invariant dictionary learning"};
  app.require_subcommand(1);
  std::optional<int> threads;
  app.add_option("--threads", threads, "OpenMP threads (default: GIDL_THREADS, then the runtime default)");
  app.set_version_flag("--version", GIDL_VERSION_STRING);

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  c_gen->add_option("--model", gen.model, "shift | sync | ecg")->check(CLI::IsMember({"shift", "sync", "ecg"}));
  c_gen->add_option("--d", gen.d, "Signal length or matrix rows");
  c_gen->add_option("--q", gen.q, "Number of generators");
  c_gen->add_option("--s", gen.s, "Terms per sample (shift)");
  c_gen->add_option("--n", gen.n, "Number of samples");
  c_gen->add_option("--r", gen.r, "Matrix columns (sync)");
  c_gen->add_option("--sigma", gen.sigma, "Noise level (sync)");
  c_gen->add_option("--len", gen.length, "Series length (ecg)");
  c_gen->add_option("--rate", gen.rate, "Sampling rate in Hz (ecg)");
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--out", gen.out)->required();
  c_gen->add_option("--truth-out", gen.truth_out, "Ground-truth generators");
  c_gen->add_option("--latents-out", gen.latents_out, "Latent rotations and coefficients as JSON (sync)");

  SegmentOptions seg;
  auto* c_seg = app.add_subcommand("segment", "Cut a series into overlapping windows");
  c_seg->add_option("--in", seg.in)->required();
  c_seg->add_option("--out", seg.out)->required();
  c_seg->add_option("--window", seg.window);
  c_seg->add_option("--stride", seg.stride);
  c_seg->add_flag("--no-zero-mean", seg.no_zero_mean);
  c_seg->add_flag("--no-unit-norm", seg.no_unit_norm);
  c_seg->add_option("--peak-window", seg.peak_window, "Keep windows whose argmax lies in A..B");
  c_seg->add_option("--max-rows", seg.max_rows, "Keep at most this many windows (0 keeps all)");

  TrainOptions train;
  auto* c_train = app.add_subcommand("train", "Learn generators");
  c_train->add_option("--data", train.data)->required();
  c_train->add_option("--group", train.group, "regular | intshift | interpshift:K | ctsshift | orth:DxR")->required();
  c_train->add_option("--q", train.q);
  add_solver_flags(c_train, train.solver);
  c_train->add_flag("--lambda-auto", train.lambda_auto, "Pick lambda by a log-grid search");
  c_train->add_option("--iters", train.iters, "Outer iterations");
  c_train->add_option("--seed", train.seed);
  c_train->add_option("--truth", train.truth, "Reference generators for the distance trace");
  c_train->add_option("--init", train.init, "Initial generators");
  c_train->add_option("--out", train.out)->required();
  c_train->add_option("--trace", train.trace, "Per-iteration CSV trace");
  c_train->add_flag("--no-timing", train.no_timing, "Write 0 in the seconds column");
  c_train->add_option("--tol", train.tol, "Relative objective change for early stopping");
  c_train->add_option("--grid", train.grid, "Phase samples per shift for ctsshift distances");

  CodeOptions code;
  auto* c_code = app.add_subcommand("code", "Sparse-code data against fixed generators");
  c_code->add_option("--data", code.data)->required();
  c_code->add_option("--group", code.group)->required();
  c_code->add_option("--gens", code.gens)->required();
  add_solver_flags(c_code, code.solver);
  c_code->add_option("--out", code.out, "Reconstructions")->required();
  c_code->add_option("--report", code.report, "Per-sample codes and objectives as JSON");

  CompleteOptions comp;
  auto* c_comp = app.add_subcommand("complete", "Fill in unobserved entries");
  c_comp->add_option("--data", comp.data)->required();
  c_comp->add_option("--mask", comp.mask, "0/1 matrix, 1 = observed")->required();
  c_comp->add_option("--group", comp.group)->required();
  c_comp->add_option("--gens", comp.gens)->required();
  c_comp->add_option("--truth", comp.truth, "Full signals for error reporting");
  add_solver_flags(c_comp, comp.solver);
  c_comp->add_option("--stages", comp.stages, "Continuation stages");
  c_comp->add_option("--factor", comp.factor, "Lambda factor between stages");
  c_comp->add_option("--out", comp.out)->required();
  c_comp->add_option("--report", comp.report);

  DistOptions dist;
  auto* c_dist = app.add_subcommand("dist", "Orbit distance between two generator sets");
  c_dist->add_option("--group", dist.group)->required();
  c_dist->add_option("--reference", dist.reference)->required();
  c_dist->add_option("--learned", dist.learned)->required();
  c_dist->add_option("--grid", dist.grid);
  c_dist->add_option("--out", dist.out, "JSON report (default: stdout)");

  BenchOptions bench;
  auto* c_bench = app.add_subcommand("bench", "Time the coding step per group");
  c_bench->add_option("--data", bench.data)->required();
  c_bench->add_option("--groups", bench.groups, "Comma-separated group list");
  c_bench->add_option("--q", bench.q);
  add_solver_flags(c_bench, bench.solver);
  c_bench->add_option("--iters", bench.iters, "Outer iterations per repetition");
  c_bench->add_option("--reps", bench.reps);
  c_bench->add_option("--seed", bench.seed);
  c_bench->add_option("--max-samples", bench.max_samples);
  c_bench->add_option("--out", bench.out)->required();

  ProjectOptions proj;
  auto* c_proj = app.add_subcommand("project", "Hermitian matrix projections and Vandermonde factors");
  c_proj->add_option("--in", proj.in, "n x 2n CSV, real and imaginary parts interleaved")->required();
  c_proj->add_option("--out", proj.out)->required();
  c_proj->add_option("--mode", proj.mode)->check(CLI::IsMember({"psd", "toeplitz", "psd-toeplitz", "vandermonde"}));
  c_proj->add_option("--iters", proj.iters);
  c_proj->add_option("--eps", proj.eps);
  c_proj->add_option("--rank-tol", proj.rank_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Context ctx;
    ctx.argv.assign(argv, argv + argc);
    ctx.threads = resolve_threads(threads);
    if (*c_gen) return cmd_gen(ctx, gen);
    if (*c_seg) return cmd_segment(ctx, seg);
    if (*c_train) return cmd_train(ctx, train);
    if (*c_code) return cmd_code(ctx, code);
    if (*c_comp) return cmd_complete(ctx, comp);
    if (*c_dist) return cmd_dist(ctx, dist);
    if (*c_bench) return cmd_bench(ctx, bench);
    if (*c_proj) return cmd_project(ctx, proj);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gidl::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const gidl::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const gidl::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitData;
  } catch (const gidl::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
