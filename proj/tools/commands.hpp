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


#ifndef GIDL_TOOLS_COMMANDS_HPP
#define GIDL_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gidl::cli {

/// Bad flag values or combinations; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::vector<std::string> argv;
  int threads = 0;
};

struct GenOptions {
  std::string model = "shift";
  long d = 30;
  long q = 3;
  long s = 5;
  long n = 1000;
  long r = 20;
  double sigma = 0.1;
  long length = 100000;
  double rate = 360.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth_out;
  std::string latents_out;
};

struct SegmentOptions {
  std::string in;
  std::string out;
  long window = 201;
  long stride = 1;
  bool no_zero_mean = false;
  bool no_unit_norm = false;
  std::string peak_window;
  long max_rows = 0;
};

struct SolverFlags {
  double lambda = 0.1;
  int inner_iters = 5;
  int dykstra_iters = 1;
  bool cold_start = false;
};

struct TrainOptions {
  std::string data;
  std::string group;
  long q = 1;
  SolverFlags solver;
  bool lambda_auto = false;
  int iters = 50;
  std::uint64_t seed = 0;
  std::string truth;
  std::string init;
  std::string out;
  std::string trace;
  bool no_timing = false;
  double tol = 0.0;
  int grid = 64;
};

struct CodeOptions {
  std::string data;
  std::string group;
  std::string gens;
  SolverFlags solver;
  std::string out;
  std::string report;
};

struct CompleteOptions {
  std::string data;
  std::string mask;
  std::string group;
  std::string gens;
  std::string truth;
  SolverFlags solver;
  int stages = 8;
  double factor = 0.5;
  std::string out;
  std::string report;
};

struct DistOptions {
  std::string group;
  std::string reference;
  std::string learned;
  int grid = 64;
  std::string out;
};

struct BenchOptions {
  std::string data;
  std::string groups = "intshift,interpshift:2,interpshift:4,ctsshift";
  long q = 1;
  SolverFlags solver;
  int iters = 2;
  int reps = 3;
  std::uint64_t seed = 0;
  long max_samples = 0;
  std::string out;
};

struct ProjectOptions {
  std::string in;
  std::string out;
  std::string mode = "psd-toeplitz";
  int iters = 500;
  double eps = 1e-9;
  double rank_tol = 1e-7;
};

int cmd_gen(const Context& ctx, const GenOptions& o);
int cmd_segment(const Context& ctx, const SegmentOptions& o);
int cmd_train(const Context& ctx, const TrainOptions& o);
int cmd_code(const Context& ctx, const CodeOptions& o);
int cmd_complete(const Context& ctx, const CompleteOptions& o);
int cmd_dist(const Context& ctx, const DistOptions& o);
int cmd_bench(const Context& ctx, const BenchOptions& o);
int cmd_project(const Context& ctx, const ProjectOptions& o);

/// Parses "A..B" into an inclusive index range.
std::pair<long, long> parse_range(const std::string& text);

/// Resolved thread count: --threads, then GIDL_THREADS, then 0 (runtime
/// default).
int resolve_threads(std::optional<int> flag);

}  // namespace gidl::cli

#endif  // GIDL_TOOLS_COMMANDS_HPP
