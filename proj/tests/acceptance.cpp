// SPDX-License-Identifier: Apache-2.0
//
// relay-irs: simulator and optimizer for IRS-assisted downlinks with
// controller relaying.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Acceptance harness: runs every release criterion at full strength and
// prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relay_irs/commands.hpp"
#include "relay_irs/config.hpp"
#include "relay_irs/verify.hpp"

using namespace relay_irs;

namespace {

struct Criterion {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Criterion> g_results;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void record(const std::string &name, bool passed, const std::string &detail, double seconds) {
    g_results.push_back({name, passed, detail, seconds});
    std::printf("[%s] %-28s (%6.1f s) %s\n", passed ? "PASS" : "FAIL", name.c_str(), seconds,
                detail.c_str());
    std::fflush(stdout);
}

void run_battery() {
    const AOConfig ao; // pinned defaults
    VerifyOptions opt; // full-strength counts
    Timer t_all;
    const VerifyReport report = run_verify(ao, opt);
    const double battery_s = t_all.seconds();

    const std::map<std::string, std::string> criterion_of = {
        {"oracle-equivalence-m2", "oracle-equivalence"},
        {"proposition-1", "proposition-1"},
        {"proposition-2", "proposition-2"},
        {"proposition-3-alpha", "proposition-3-alpha"},
        {"ao-trace-contract", "ao-contract"},
        {"closed-form-dominance", "closed-form-optimality"},
        {"lifting-identity", "lifting-identity"},
    };
    for (const SuiteResult &s : report.suites) {
        std::ostringstream d;
        d << s.checked << " checked, " << s.failed << " failed; " << s.detail;
        record(criterion_of.at(s.name), s.passed(), d.str(),
               s.name == "oracle-equivalence-m2" ? battery_s : 0.0);
    }
}

void run_fig3_shape() {
    Timer t;
    ExperimentConfig cfg; // defaults: 8x8 (M = 64), 50 trials, d0 = 10..100
    const AOConfig ao;
    const SweepResult sweep = sweep_distance(cfg, ao);

    std::map<std::pair<double, int>, std::map<Scheme, double>> cell;
    for (const TrialRecord &r : sweep.trials)
        cell[{r.d0, r.trial}][r.scheme] = r.rate;
    int dominance_violations = 0;
    for (const auto &[key, rates] : cell)
        if (rates.at(Scheme::RelayingOptAlpha) < rates.at(Scheme::ConventionalIRS) - 1e-9)
            ++dominance_violations;

    std::map<std::pair<double, Scheme>, double> mean;
    for (const AggregateRow &row : sweep.aggregate)
        mean[{row.d0, row.scheme}] = row.mean_rate;

    int midrange_violations = 0;
    std::ostringstream midrange_detail;
    for (double d0 : {40.0, 50.0, 60.0}) {
        const double bare = mean.at({d0, Scheme::RelayNoIRS});
        for (Scheme s : {Scheme::ConventionalIRS, Scheme::RelayingOptAlpha}) {
            if (!(mean.at({d0, s}) > bare)) {
                ++midrange_violations;
                midrange_detail << " [" << scheme_name(s) << " " << mean.at({d0, s}) << " <= "
                                << bare << " at d0=" << d0 << "]";
            }
        }
    }

    double eq_min = std::numeric_limits<double>::infinity();
    double eq_max = -eq_min;
    for (double d0 : {30.0, 40.0, 50.0, 60.0, 70.0}) {
        const double v = mean.at({d0, Scheme::RelayingEqualAlpha});
        eq_min = std::min(eq_min, v);
        eq_max = std::max(eq_max, v);
    }
    const double variation = (eq_max > 0.0) ? (eq_max - eq_min) / eq_max : 1.0;

    std::ostringstream d;
    d << "(a) dominance violations " << dominance_violations << "/" << cell.size()
      << "; (b) mid-range ordering violations " << midrange_violations << midrange_detail.str()
      << "; (c) equal-alpha variation " << 100.0 * variation << "%";
    const bool ok = dominance_violations == 0 && midrange_violations == 0 && variation < 0.20;
    record("fig3-shape", ok, d.str(), t.seconds());
}

void run_determinism() {
    Timer t;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "relay_irs_acceptance";
    fs::create_directories(dir);

    FullConfig cfg = parse_config_text(R"({
      "geometry": {"irs_rows": 4, "irs_cols": 4},
      "sweep": {"d0": [30, 60], "trials": 3, "seed": 2718}
    })");

    const auto read_file = [](const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    std::ostringstream log;
    const std::string stem_a = (dir / "run_a").string();
    const std::string stem_b = (dir / "run_b").string();
    const int rc_a = cmd_sweep(cfg, stem_a, log, true);
    const int rc_b = cmd_sweep(cfg, stem_b, log, true);

    bool ok = rc_a == 0 && rc_b == 0;
    std::string mismatch;
    for (const char *suffix : {"_trials.csv", "_agg.csv", "_trials.json", "_agg.json"}) {
        const std::string a = read_file(stem_a + suffix);
        const std::string b = read_file(stem_b + suffix);
        if (a.empty() || a != b) {
            ok = false;
            mismatch += std::string(" ") + suffix;
        }
    }
    record("sweep-determinism", ok,
           ok ? "two runs produced byte-identical CSV/JSON outputs"
              : "mismatch in" + mismatch + (rc_a || rc_b ? " (nonzero exit)" : ""),
           t.seconds());
}

} // namespace

int main() {
    std::printf("relay-irs acceptance suite\n");
    run_battery();
    run_fig3_shape();
    run_determinism();

    int failed = 0;
    for (const Criterion &c : g_results)
        if (!c.passed)
            ++failed;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failed,
                g_results.size());
    return failed == 0 ? 0 : 1;
}
