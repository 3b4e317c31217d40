// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace mmv2v {

namespace {

std::string fmt_g(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Identity columns shared by both CSVs.
void append_point_columns(std::string& out, const SimConfig& c) {
  out += scenario_name(c.scenario);
  out += ',';
  out += fmt_g(c.carrier_freq_ghz);
  out += ',';
  out += fmt_g(c.bandwidth_mhz);
  out += ',';
  out += std::to_string(c.numerology_index);
  out += ',';
  out += std::to_string(c.mcs_index);
  out += ',';
  out += fmt_g(c.distance_m);
  out += ',';
  out += fmt_g(c.reorder_timer_ms);
  out += ',';
  out += c.harq_enabled ? '1' : '0';
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double ci95_halfwidth(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean_of(values);
  double ss = 0.0;
  for (double x : values) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

HarnessResult run_all(const SweepSpec& spec, const SimHooks& base_hooks) {
  HarnessResult result;
  result.spec = spec;
  result.configs = expand_sweep(spec);
  const std::size_t n = result.configs.size();
  if ((base_hooks.trace || base_hooks.dump_channel) && n != 1)
    throw ConfigError("trace/channel-dump output requires a sweep of exactly one run");
  result.metrics.resize(n);

  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::thread::hardware_concurrency();
  if (threads < 1) threads = 1;
  if (threads > n) threads = static_cast<unsigned>(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        result.metrics[i] = run_replication(result.configs[i], base_hooks);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

std::string runs_csv(const HarnessResult& result) {
  std::string out =
      "run_id,scenario,fc_ghz,bw_mhz,numerology,mcs,distance_m,reorder_timer_ms,"
      "harq,seed,sent,delivered,prr,mean_delay_ms,p95_delay_ms,tx_attempts,"
      "mac_drops,rlc_timer_expirations,mean_buffer_wait_ms\n";
  for (std::size_t i = 0; i < result.configs.size(); ++i) {
    const SimConfig& c = result.configs[i];
    const RunMetrics& m = result.metrics[i];
    out += std::to_string(c.run_id);
    out += ',';
    append_point_columns(out, c);
    out += ',';
    out += std::to_string(c.seed);
    out += ',';
    out += std::to_string(m.sent);
    out += ',';
    out += std::to_string(m.delivered);
    out += ',';
    out += fmt_g(m.prr);
    out += ',';
    out += fmt_g(m.mean_delay_ms);
    out += ',';
    out += fmt_g(m.p95_delay_ms);
    out += ',';
    out += std::to_string(m.tx_attempts);
    out += ',';
    out += std::to_string(m.mac_drops);
    out += ',';
    out += std::to_string(m.rlc_timer_expirations);
    out += ',';
    out += fmt_g(m.mean_buffer_wait_ms);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const HarnessResult& result) {
  std::string out =
      "scenario,fc_ghz,bw_mhz,numerology,mcs,distance_m,reorder_timer_ms,harq,"
      "n_reps,prr_mean,prr_ci95,delay_mean_ms,delay_ci95_ms\n";
  const int reps = result.spec.replications;
  if (reps < 1 || result.configs.empty()) return out;
  for (std::size_t base = 0; base < result.configs.size();
       base += static_cast<std::size_t>(reps)) {
    std::vector<double> prr;
    std::vector<double> delay;
    for (std::size_t i = base; i < base + static_cast<std::size_t>(reps); ++i) {
      prr.push_back(result.metrics[i].prr);
      // Runs that delivered nothing have no delay sample to contribute.
      if (!std::isnan(result.metrics[i].mean_delay_ms))
        delay.push_back(result.metrics[i].mean_delay_ms);
    }
    append_point_columns(out, result.configs[base]);
    out += ',';
    out += std::to_string(reps);
    out += ',';
    out += fmt_g(mean_of(prr));
    out += ',';
    const double prr_ci = ci95_halfwidth(prr);
    if (!std::isnan(prr_ci)) out += fmt_g(prr_ci);
    out += ',';
    out += delay.empty() ? "nan" : fmt_g(mean_of(delay));
    out += ',';
    const double delay_ci = ci95_halfwidth(delay);
    if (!std::isnan(delay_ci)) out += fmt_g(delay_ci);
    out += '\n';
  }
  return out;
}

}  // namespace mmv2v
