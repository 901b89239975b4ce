#include "graphrd/particles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"
#include "graphrd/rng.hpp"

namespace graphrd {

GridFunction ParticleState::density() const {
  std::vector<double> values(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) values[k] = static_cast<double>(m[k]) / ell;
  return GridFunction(std::move(values));
}

GridFunction density(const ParticleState& state) { return state.density(); }

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Migrate: return "migrate";
    case EventKind::Birth: return "birth";
    case EventKind::Death: return "death";
  }
  return "unknown";
}

namespace {

/// Complete binary tree over node rates. Internal nodes are recomputed from
/// their children on every update, so sums never accumulate drift.
class SumTree {
 public:
  explicit SumTree(std::size_t n) : leaves_(1) {
    while (leaves_ < n) leaves_ *= 2;
    tree_.assign(2 * leaves_, 0.0);
  }

  void set(std::size_t k, double rate) {
    std::size_t pos = leaves_ + k;
    tree_[pos] = rate;
    for (pos /= 2; pos >= 1; pos /= 2) tree_[pos] = tree_[2 * pos] + tree_[2 * pos + 1];
  }

  double total() const { return tree_[1]; }
  double rate(std::size_t k) const { return tree_[leaves_ + k]; }

  /// Leaf whose cumulative range contains x, for x in [0, total).
  std::size_t find(double x) const {
    std::size_t pos = 1;
    while (pos < leaves_) {
      const double left = tree_[2 * pos];
      // Never step into an empty subtree, even if rounding pushed x past
      // the left sum.
      if ((x < left && left > 0.0) || tree_[2 * pos + 1] <= 0.0) {
        pos = 2 * pos;
      } else {
        x -= left;
        pos = 2 * pos + 1;
      }
    }
    return pos - leaves_;
  }

 private:
  std::size_t leaves_;
  std::vector<double> tree_;
};

void apply_event(std::vector<Count>& m, const ParticleEvent& e) {
  switch (e.kind) {
    case EventKind::Migrate:
      --m[e.k];
      ++m[e.i];
      break;
    case EventKind::Birth: ++m[e.k]; break;
    case EventKind::Death: --m[e.k]; break;
  }
  if (m[e.k] < 0) throw std::logic_error("event log drove a count negative");
}

}  // namespace

ParticleTrajectory simulate(std::shared_ptr<const StepGraphon> g, RateFamily birth,
                            RateFamily death, std::vector<Count> m0, double ell, double T,
                            Count cap, std::uint64_t seed, std::uint64_t stream) {
  if (!g) fail(ErrorCode::InvalidArgument, "graphon is null");
  const std::size_t n = g->size();
  if (m0.size() != n) {
    fail(ErrorCode::DimensionMismatch, "initial counts have length " + std::to_string(m0.size()) +
                                           ", graphon has n = " + std::to_string(n));
  }
  if (!(ell > 0.0) || !std::isfinite(ell)) fail(ErrorCode::InvalidArgument, "ell must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) fail(ErrorCode::InvalidArgument, "horizon must be >= 0");
  for (Count c : m0) {
    if (c < 0) fail(ErrorCode::InvalidArgument, "initial counts must be nonnegative");
  }
  const Count highest = *std::max_element(m0.begin(), m0.end());
  if (cap < highest) {
    fail(ErrorCode::CapBelowInitial, "cap " + std::to_string(cap) + " is below the initial maximum " +
                                         std::to_string(highest));
  }

  ParticleTrajectory traj;
  traj.initial_ = ParticleState{m0, ell, 0.0};
  traj.graphon_ = g;
  traj.birth_ = birth;
  traj.death_ = death;
  traj.cap_ = cap;
  traj.horizon_ = T;
  traj.seed_ = seed;
  traj.stream_ = stream;
  traj.checkpoint_every_ = std::max<std::size_t>(256, n);
  traj.checkpoints_.push_back(m0);

  // Row prefix sums of W_ki / n over i != k, and the off-diagonal degrees.
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> prefix(n * n);
  std::vector<double> out_degree(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) acc += (*g)(k, i) * inv_n;
      prefix[k * n + i] = acc;
    }
    out_degree[k] = acc;
  }

  std::vector<Count> m = std::move(m0);
  auto node_rate = [&](std::size_t k) {
    const double x = static_cast<double>(m[k]) / ell;
    return static_cast<double>(m[k]) * out_degree[k] + ell * birth(x) + ell * death(x);
  };
  SumTree tree(n);
  for (std::size_t k = 0; k < n; ++k) tree.set(k, node_rate(k));

  Rng rng(seed, stream);
  double t = 0.0;
  traj.end_time_ = T;
  while (true) {
    const double total = tree.total();
    if (!(total > 0.0)) break;
    t += rng.exponential(total);
    if (t > T) break;

    const std::size_t k = tree.find(rng.uniform() * total);
    const double x = static_cast<double>(m[k]) / ell;
    const double migrate = static_cast<double>(m[k]) * out_degree[k];
    const double born = ell * birth(x);
    const double died = ell * death(x);
    const double pick = rng.uniform() * (migrate + born + died);

    ParticleEvent e{t, EventKind::Birth, static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k)};
    if (pick < migrate) {
      e.kind = EventKind::Migrate;
      const double* row = &prefix[k * n];
      const double target = rng.uniform() * out_degree[k];
      // First i with prefix > target; that entry has positive weight.
      std::size_t i = static_cast<std::size_t>(std::upper_bound(row, row + n, target) - row);
      if (i == n) {
        // target rounded up to the row total: take the last weighted entry.
        i = n - 1;
        while (i > 0 && row[i] == row[i - 1]) --i;
      }
      e.i = static_cast<std::uint32_t>(i);
    } else if (pick < migrate + born || died <= 0.0) {
      e.kind = EventKind::Birth;
    } else {
      e.kind = EventKind::Death;
    }

    const std::size_t grows = e.kind == EventKind::Migrate ? e.i : k;
    if (e.kind != EventKind::Death && m[grows] + 1 > cap) {
      traj.capped_ = true;
      traj.end_time_ = t;
      break;
    }
    apply_event(m, e);
    traj.events_.push_back(e);
    if (traj.events_.size() % traj.checkpoint_every_ == 0) traj.checkpoints_.push_back(m);
    tree.set(k, node_rate(k));
    if (e.kind == EventKind::Migrate) tree.set(e.i, node_rate(e.i));
  }
  return traj;
}

ParticleTrajectory simulate(const StepGraphon& g, RateFamily birth, RateFamily death,
                            std::vector<Count> m0, double ell, double T, Count cap,
                            std::uint64_t seed, std::uint64_t stream) {
  return simulate(std::make_shared<const StepGraphon>(g), birth, death, std::move(m0), ell, T, cap,
                  seed, stream);
}

ParticleState ParticleTrajectory::state_at(double t) const {
  if (!(t >= 0.0) || t > end_time_) {
    fail(ErrorCode::TimeOutOfRange, "time " + format_real(t) + " outside [0, " +
                                        format_real(end_time_) + "]");
  }
  const auto it = std::upper_bound(events_.begin(), events_.end(), t,
                                   [](double v, const ParticleEvent& e) { return v < e.time; });
  const std::size_t applied = static_cast<std::size_t>(it - events_.begin());
  const std::size_t c = applied / checkpoint_every_;
  std::vector<Count> m = checkpoints_[c];
  for (std::size_t j = c * checkpoint_every_; j < applied; ++j) apply_event(m, events_[j]);
  return ParticleState{std::move(m), initial_.ell, t};
}

GridFunction density(const ParticleTrajectory& traj, double t) {
  return traj.state_at(t).density();
}

std::string events_to_csv(const ParticleTrajectory& traj) {
  std::string out = "time,kind,k,i\n";
  for (const auto& e : traj.events()) {
    out += format_real(e.time);
    out += ',';
    out += to_string(e.kind);
    out += ',';
    out += std::to_string(e.k);
    out += ',';
    if (e.kind == EventKind::Migrate) out += std::to_string(e.i);
    out += '\n';
  }
  return out;
}

std::string trajectory_metadata_json(const ParticleTrajectory& traj) {
  nlohmann::json j;
  j["seed"] = traj.seed();
  j["stream"] = traj.stream();
  j["cap"] = traj.cap();
  j["capped_flag"] = traj.capped();
  j["n"] = traj.size();
  j["ell"] = traj.ell();
  j["horizon"] = traj.horizon();
  j["end_time"] = traj.end_time();
  j["event_count"] = traj.events().size();
  j["birth"] = traj.birth().to_string();
  j["death"] = traj.death().to_string();
  j["initial_counts"] = traj.initial().m;
  return j.dump();
}

std::string density_csv(const ParticleTrajectory& traj, const std::vector<double>& times) {
  std::string out = "t";
  for (std::size_t k = 0; k < traj.size(); ++k) out += ",cell_" + std::to_string(k);
  out += '\n';
  for (double t : times) {
    const auto u = density(traj, t);
    out += format_real(t);
    for (double v : u.values()) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace graphrd
