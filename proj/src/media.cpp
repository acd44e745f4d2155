#include "tempscat/media.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempscat/error.hpp"

namespace tempscat {

namespace {

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

MediumState blend(const MediumState& a, const MediumState& b, double u) {
  const double s = smoothstep(u);
  return MediumState(a.epsilon() + (b.epsilon() - a.epsilon()) * s,
                     a.mu() + (b.mu() - a.mu()) * s, a.branch());
}

// A smooth ramp must not pass through epsilon = 0 or mu = 0.
void require_rampable(const MediumState& a, const MediumState& b) {
  if (a.epsilon() * b.epsilon() <= 0.0 || a.mu() * b.mu() <= 0.0 || a.branch() != b.branch()) {
    throw Error(ErrorCode::domain,
                "ramp endpoints must share the signs of epsilon and mu and the index branch");
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::domain, std::string(what) + " must be finite");
  }
}

}  // namespace

MediumState::MediumState(double epsilon, double mu, Branch branch)
    : epsilon_(epsilon), mu_(mu), branch_(branch) {
  const double product = epsilon * mu;
  if (!std::isfinite(epsilon) || !std::isfinite(mu) || !std::isfinite(product) || product <= 0.0) {
    throw Error(ErrorCode::domain, "medium requires finite epsilon, mu with epsilon*mu > 0 (eps=" +
                                       std::to_string(epsilon) + ", mu=" + std::to_string(mu) + ")");
  }
  if (branch == Branch::negative && !(epsilon < 0.0 && mu < 0.0)) {
    throw Error(ErrorCode::domain, "negative index branch requires epsilon < 0 and mu < 0");
  }
}

double wave_speed(const MediumState& m) {
  const double product = std::abs(m.epsilon() * m.mu());
  if (!std::isfinite(product) || product == 0.0) {
    throw Error(ErrorCode::domain, "wave speed undefined for epsilon*mu = 0");
  }
  return m.sign() / std::sqrt(product);
}

double impedance(const MediumState& m) {
  if (m.epsilon() == 0.0) {
    throw Error(ErrorCode::domain, "impedance undefined for epsilon = 0");
  }
  return std::sqrt(m.mu() / m.epsilon());
}

double refractive_index(const MediumState& m) {
  const double product = std::abs(m.epsilon() * m.mu());
  if (!std::isfinite(product) || product == 0.0) {
    throw Error(ErrorCode::domain, "refractive index undefined for epsilon*mu = 0");
  }
  return m.sign() * std::sqrt(product);
}

TemporalProfile TemporalProfile::constant(const MediumState& medium) {
  TemporalProfile p;
  p.kind_ = ProfileKind::constant;
  p.levels_ = {medium};
  return p;
}

TemporalProfile TemporalProfile::step(const MediumState& before, const MediumState& after,
                                      double t0) {
  require_finite(t0, "t0");
  TemporalProfile p;
  p.kind_ = ProfileKind::step;
  p.levels_ = {before, after};
  p.switch_times_ = {t0};
  p.t0_ = t0;
  return p;
}

TemporalProfile TemporalProfile::ramp(const MediumState& before, const MediumState& after,
                                      double t0, double tau) {
  require_finite(t0, "t0");
  require_finite(tau, "tau");
  if (tau < 0.0) throw Error(ErrorCode::domain, "ramp width tau must be >= 0");
  if (tau > 0.0) require_rampable(before, after);
  TemporalProfile p;
  p.kind_ = ProfileKind::ramp;
  p.levels_ = {before, after};
  p.switch_times_ = {t0};
  p.t0_ = t0;
  p.tau_ = tau;
  return p;
}

TemporalProfile TemporalProfile::periodic(const MediumState& before, const MediumState& after,
                                          double t0, double period, double duty) {
  require_finite(t0, "t0");
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::domain, "period must be finite and > 0");
  }
  if (!(duty > 0.0 && duty < 1.0)) throw Error(ErrorCode::domain, "duty must lie in (0, 1)");
  TemporalProfile p;
  p.kind_ = ProfileKind::periodic;
  p.levels_ = {before, after};
  p.t0_ = t0;
  p.period_ = period;
  p.duty_ = duty;
  return p;
}

TemporalProfile TemporalProfile::sequence(std::vector<MediumState> levels,
                                          std::vector<double> switch_times, double tau) {
  if (levels.empty() || levels.size() != switch_times.size() + 1) {
    throw Error(ErrorCode::domain, "sequence needs exactly one more level than switch times");
  }
  require_finite(tau, "tau");
  if (tau < 0.0) throw Error(ErrorCode::domain, "ramp width tau must be >= 0");
  for (std::size_t j = 0; j < switch_times.size(); ++j) {
    require_finite(switch_times[j], "switch time");
    if (j > 0 && !(switch_times[j] - switch_times[j - 1] >= tau && switch_times[j] > switch_times[j - 1])) {
      throw Error(ErrorCode::domain, "switch times must increase and be at least tau apart");
    }
    if (tau > 0.0) require_rampable(levels[j], levels[j + 1]);
  }
  TemporalProfile p;
  p.kind_ = ProfileKind::sequence;
  p.levels_ = std::move(levels);
  p.switch_times_ = std::move(switch_times);
  p.t0_ = p.switch_times_.empty() ? 0.0 : p.switch_times_.front();
  p.tau_ = tau;
  return p;
}

MediumState TemporalProfile::sample(double t) const {
  if (kind_ == ProfileKind::periodic) {
    if (t < t0_) return before();
    const double phase = std::fmod(t - t0_, period_);
    if (phase == 0.0 || phase == duty_ * period_) {
      throw Error(ErrorCode::ambiguous, "periodic profile sampled on a switching instant");
    }
    return phase < duty_ * period_ ? after() : before();
  }
  for (std::size_t j = 0; j < switch_times_.size(); ++j) {
    const double s = switch_times_[j];
    if (tau_ == 0.0) {
      if (t == s) {
        throw Error(ErrorCode::ambiguous,
                    "profile sampled exactly at a jump; take a one-sided limit instead");
      }
      if (t < s) return levels_[j];
      continue;
    }
    const double lo = s - 0.5 * tau_;
    const double hi = s + 0.5 * tau_;
    if (t <= lo) return levels_[j];
    if (t < hi) return blend(levels_[j], levels_[j + 1], (t - lo) / tau_);
  }
  return levels_.back();
}

MediumState TemporalProfile::limit_before(double t) const {
  if (kind_ == ProfileKind::periodic) {
    if (t <= t0_) return before();
    const double phase = std::fmod(t - t0_, period_);
    if (phase == 0.0) return before();
    if (phase == duty_ * period_) return after();
    return sample(t);
  }
  if (tau_ == 0.0) {
    for (std::size_t j = 0; j < switch_times_.size(); ++j) {
      if (t == switch_times_[j]) return levels_[j];
    }
  }
  return sample(t);
}

MediumState TemporalProfile::limit_after(double t) const {
  if (kind_ == ProfileKind::periodic) {
    if (t < t0_) return before();
    const double phase = std::fmod(t - t0_, period_);
    if (phase == 0.0) return after();
    if (phase == duty_ * period_) return before();
    return sample(t);
  }
  if (tau_ == 0.0) {
    for (std::size_t j = 0; j < switch_times_.size(); ++j) {
      if (t == switch_times_[j]) return levels_[j + 1];
    }
  }
  return sample(t);
}

std::vector<double> TemporalProfile::breakpoints(double a, double b) const {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> points;
  auto keep = [&](double p) {
    if (p > lo && p < hi) points.push_back(p);
  };
  if (kind_ == ProfileKind::periodic) {
    if (hi > t0_) {
      const double first = std::max(0.0, std::floor((lo - t0_) / period_));
      for (double k = first; t0_ + k * period_ < hi; k += 1.0) {
        keep(t0_ + k * period_);
        keep(t0_ + (k + duty_) * period_);
      }
    }
  } else {
    for (double s : switch_times_) {
      if (tau_ == 0.0) {
        keep(s);
      } else {
        keep(s - 0.5 * tau_);
        keep(s + 0.5 * tau_);
      }
    }
  }
  std::sort(points.begin(), points.end());
  if (a > b) std::reverse(points.begin(), points.end());
  return points;
}

}  // namespace tempscat
