#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "graphrd/gridfn.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

using Count = std::int64_t;

struct ParticleState {
  std::vector<Count> m;
  double ell = 1.0;
  double t = 0.0;

  std::size_t size() const noexcept { return m.size(); }
  /// m_k / ell on cell I_k.
  GridFunction density() const;
};

enum class EventKind : std::uint8_t { Migrate, Birth, Death };

std::string_view to_string(EventKind kind) noexcept;

/// One jump of the chain. For migrations a particle moves from node k to
/// node i; births and deaths act on node k and carry i = k.
struct ParticleEvent {
  double time = 0.0;
  EventKind kind = EventKind::Birth;
  std::uint32_t k = 0;
  std::uint32_t i = 0;
};

/// Event log of one run plus the data needed to replay it. Immutable after
/// simulate() returns.
class ParticleTrajectory {
 public:
  const ParticleState& initial() const noexcept { return initial_; }
  const std::vector<ParticleEvent>& events() const noexcept { return events_; }
  const StepGraphon& graphon() const noexcept { return *graphon_; }
  const RateFamily& birth() const noexcept { return birth_; }
  const RateFamily& death() const noexcept { return death_; }
  std::size_t size() const noexcept { return initial_.m.size(); }
  double ell() const noexcept { return initial_.ell; }
  Count cap() const noexcept { return cap_; }
  /// The run stopped because an event would have pushed a count above the
  /// cap. That event is not in the log.
  bool capped() const noexcept { return capped_; }
  /// Requested horizon T.
  double horizon() const noexcept { return horizon_; }
  /// Last time at which the state is known: T, or the time of the rejected
  /// event when capped.
  double end_time() const noexcept { return end_time_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// State at time t (events with time <= t applied). Throws TimeOutOfRange.
  ParticleState state_at(double t) const;
  ParticleState final_state() const { return state_at(end_time_); }

 private:
  friend ParticleTrajectory simulate(std::shared_ptr<const StepGraphon>, RateFamily, RateFamily,
                                     std::vector<Count>, double, double, Count, std::uint64_t,
                                     std::uint64_t);

  ParticleState initial_;
  std::vector<ParticleEvent> events_;
  std::shared_ptr<const StepGraphon> graphon_;
  RateFamily birth_ = RateFamily::zero();
  RateFamily death_ = RateFamily::zero();
  Count cap_ = 0;
  bool capped_ = false;
  double horizon_ = 0.0;
  double end_time_ = 0.0;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::size_t checkpoint_every_ = 256;
  /// checkpoints_[c] is the count vector after c * checkpoint_every_ events.
  std::vector<std::vector<Count>> checkpoints_;
};

/// Exact (Gillespie) simulation of the random walk with births and deaths:
///   migrate k -> i  at rate m_k W_ki / n   (i != k)
///   birth at k      at rate ell b(m_k / ell)
///   death at k      at rate ell d(m_k / ell)
/// Node totals live in a sum tree; the migration target is found by binary
/// search in the row prefix sums. Stops at T, when the total rate vanishes
/// (a normal early end), or when a count would exceed `cap` (capped).
/// Draws from Rng(seed, stream). Throws CapBelowInitial, InvalidArgument,
/// DimensionMismatch.
ParticleTrajectory simulate(std::shared_ptr<const StepGraphon> g, RateFamily birth,
                            RateFamily death, std::vector<Count> m0, double ell, double T,
                            Count cap, std::uint64_t seed, std::uint64_t stream = 0);
ParticleTrajectory simulate(const StepGraphon& g, RateFamily birth, RateFamily death,
                            std::vector<Count> m0, double ell, double T, Count cap,
                            std::uint64_t seed, std::uint64_t stream = 0);

/// m_k(t) / ell. Throws TimeOutOfRange.
GridFunction density(const ParticleTrajectory& traj, double t);
GridFunction density(const ParticleState& state);

/// Event log CSV: time,kind,k,i (i empty for births and deaths).
std::string events_to_csv(const ParticleTrajectory& traj);
/// Metadata sidecar: seed, stream, cap, capped flag and run configuration.
std::string trajectory_metadata_json(const ParticleTrajectory& traj);
/// Wide CSV: t, cell_0 .. cell_{n-1} of the density at each requested time.
std::string density_csv(const ParticleTrajectory& traj, const std::vector<double>& times);

}  // namespace graphrd
