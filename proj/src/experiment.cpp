#include "sfr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>
#include <tuple>

#include "sfr/errors.hpp"
#include "sfr/trm_io.hpp"

namespace sfr {

void ExperimentSpec::validate() const {
  radar.validate();
  shape.validate();
  solver_opts.validate();
  if (trials_per_point < 1) throw ConfigError("trials_per_point must be >= 1");
  if (sweep.empty()) throw ConfigError("sweep needs at least one missing-pulse count");
  for (int m : sweep) {
    if (m < 0 || m > radar.n_pulses - 1) {
      throw ConfigError("sweep value " + std::to_string(m) + " outside [0, " + std::to_string(radar.n_pulses - 1) + "]");
    }
  }
  if (snr_db.empty()) throw ConfigError("at least one SNR value is required");
  for (double s : snr_db) {
    if (std::isnan(s) || s == -std::numeric_limits<double>::infinity()) throw ConfigError("SNR must be a number or +inf");
  }
  if (solvers.empty()) throw ConfigError("at least one solver must be selected");
  if (target.kind == TargetSpec::Kind::SyntheticSparse &&
      (target.n_scatterers < 1 || target.n_scatterers > radar.profile_length())) {
    throw ConfigError("n_scatterers must lie in [1, N*L]");
  }
  if (target.kind == TargetSpec::Kind::FromFile && target.path.empty()) {
    throw ConfigError("file target needs a path");
  }
}

std::uint64_t child_seed(std::uint64_t seed, int missing_count, int trial) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(missing_count)), static_cast<std::uint64_t>(trial));
}

RangeProfile synthetic_sparse_target(const RadarConfig& cfg, int n_scatterers, std::uint64_t seed) {
  const int n_cells = cfg.profile_length();
  if (n_scatterers < 0 || n_scatterers > n_cells) throw ConfigError("n_scatterers must lie in [0, N*L]");
  std::mt19937_64 gen(seed);
  std::vector<int> cells(static_cast<std::size_t>(n_cells));
  for (int p = 0; p < n_cells; ++p) cells[static_cast<std::size_t>(p)] = p;
  for (int i = 0; i < n_scatterers; ++i) {
    std::uniform_int_distribution<int> pick(i, n_cells - 1);
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(pick(gen))]);
  }
  // Rayleigh with scale sqrt(2/pi) has mean 1.
  const double scale = std::sqrt(2.0 / std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RangeProfile h(cfg);
  for (int i = 0; i < n_scatterers; ++i) {
    const double u = 1.0 - unit(gen);  // (0, 1]
    const double mag = scale * std::sqrt(-2.0 * std::log(u));
    const double phase = 2.0 * std::numbers::pi * unit(gen);
    h.values()[cells[static_cast<std::size_t>(i)]] = std::polar(mag, phase);
  }
  return h;
}

TrialData make_trial(const ExperimentSpec& spec, const RangeProfile* file_target, int missing_count, double snr_db,
                     int trial) {
  const std::uint64_t cs = child_seed(spec.seed, missing_count, trial);
  RangeProfile truth = file_target ? *file_target
                                   : synthetic_sparse_target(spec.radar, spec.target.n_scatterers, mix_seed(cs, 0));
  PulseSchedule schedule = random_missing_schedule(spec.radar.n_pulses, missing_count, mix_seed(cs, 1));
  std::optional<NoiseModel> noise;
  if (std::isfinite(snr_db)) noise = NoiseModel{snr_db, mix_seed(cs, 2)};
  Trm trm = build_trm(truth, spec.shape, schedule, noise);
  SensingSystem sys = build_sensing_system(spec.radar, spec.shape, schedule, trm);
  return TrialData{std::move(truth), std::move(schedule), std::move(trm), std::move(sys)};
}

RecoveryResult run_method(Method method, const TrialData& data, const ExperimentSpec& spec) {
  switch (method) {
    case Method::SparseL1:
      return solve_sparse_l1(data.sys, spec.solver_opts);
    case Method::LeastSquares:
      return solve_least_squares(data.sys, spec.solver_opts);
    case Method::StretchIdft:
      return solve_stretch_idft(data.trm, spec.radar, spec.shape);
  }
  throw ConfigError("unknown method");
}

int resolve_thread_count(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int threads_from_env() {
  const char* env = std::getenv("SFR_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw ConfigError(std::string("SFR_THREADS must be a nonnegative integer, got '") + env + "'");
  return static_cast<int>(v);
}

std::uint64_t content_hash(const CVector& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double parts[2] = {v[i].real(), v[i].imag()};
    unsigned char bytes[sizeof parts];
    std::memcpy(bytes, parts, sizeof parts);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {

struct Job {
  int missing = 0;
  double snr = 0.0;
  int trial = 0;
};

std::vector<TrialRecord> run_job(const ExperimentSpec& spec, const RangeProfile* file_target, const Job& job) {
  const TrialData data = make_trial(spec, file_target, job.missing, job.snr, job.trial);
  std::vector<TrialRecord> out;
  for (Method method : spec.solvers) {
    const auto start = std::chrono::steady_clock::now();
    const RecoveryResult res = run_method(method, data, spec);
    const auto stop = std::chrono::steady_clock::now();
    const SimilarityReport rep = similarity(data.truth.values(), res.h_est);

    TrialRecord rec;
    rec.seed = child_seed(spec.seed, job.missing, job.trial);
    rec.missing_count = job.missing;
    rec.snr_db = job.snr;
    rec.trial = job.trial;
    rec.method = method;
    rec.similarity = rep.similarity;
    rec.rel_l2_error = rep.rel_l2_error;
    rec.peak_sidelobe_db = rep.peak_sidelobe_db;
    rec.residual_l2 = res.residual_l2;
    rec.iterations = res.iterations;
    rec.converged = res.converged;
    rec.input_hash = content_hash(method == Method::StretchIdft ? vectorize(data.trm) : data.sys.y);
    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
    out.push_back(rec);
  }
  return out;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  std::optional<RangeProfile> file_target;
  if (spec.target.kind == TargetSpec::Kind::FromFile) file_target = load_profile_csv(spec.target.path, spec.radar);

  std::vector<Job> jobs;
  for (int missing : spec.sweep) {
    for (double snr : spec.snr_db) {
      for (int t = 0; t < spec.trials_per_point; ++t) jobs.push_back({missing, snr, t});
    }
  }

  std::vector<std::vector<TrialRecord>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        slots[i] = run_job(spec, file_target ? &*file_target : nullptr, jobs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const int n_workers = std::min<int>(resolve_thread_count(threads), static_cast<int>(jobs.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<TrialRecord> records;
  for (auto& s : slots) records.insert(records.end(), s.begin(), s.end());
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tuple(a.missing_count, a.snr_db, a.trial, static_cast<int>(a.method)) <
           std::tuple(b.missing_count, b.snr_db, b.trial, static_cast<int>(b.method));
  });
  return records;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool include_wall_time) {
  os << "seed,missing_count,snr_db,trial,method,similarity,rel_l2_error,peak_sidelobe_db,residual_l2,iterations,"
        "converged,input_hash";
  if (include_wall_time) os << ",wall_time_s";
  os << '\n';
  for (const TrialRecord& r : records) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.input_hash));
    os << r.seed << ',' << r.missing_count << ',' << num(r.snr_db) << ',' << r.trial << ',' << method_name(r.method)
       << ',' << num(r.similarity) << ',' << num(r.rel_l2_error) << ',' << num(r.peak_sidelobe_db) << ','
       << num(r.residual_l2) << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ',' << hash;
    if (include_wall_time) os << ',' << num(r.wall_time_s);
    os << '\n';
  }
}

std::vector<SweepSummary> summarize(const std::vector<TrialRecord>& records) {
  std::map<std::tuple<int, double, int>, SweepSummary> acc;
  for (const TrialRecord& r : records) {
    SweepSummary& s = acc[{r.missing_count, r.snr_db, static_cast<int>(r.method)}];
    s.missing_count = r.missing_count;
    s.snr_db = r.snr_db;
    s.method = r.method;
    ++s.trials;
    s.mean_similarity += r.similarity;
    s.mean_rel_l2_error += r.rel_l2_error;
    s.mean_peak_sidelobe_db += r.peak_sidelobe_db;
  }
  std::vector<SweepSummary> out;
  for (auto& [key, s] : acc) {
    s.mean_similarity /= s.trials;
    s.mean_rel_l2_error /= s.trials;
    s.mean_peak_sidelobe_db /= s.trials;
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summary) {
  os << "missing_count,snr_db,method,trials,mean_similarity,mean_rel_l2_error,mean_peak_sidelobe_db\n";
  for (const SweepSummary& s : summary) {
    os << s.missing_count << ',' << num(s.snr_db) << ',' << method_name(s.method) << ',' << s.trials << ','
       << num(s.mean_similarity) << ',' << num(s.mean_rel_l2_error) << ',' << num(s.mean_peak_sidelobe_db) << '\n';
  }
}

}  // namespace sfr
