#include "vfl/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vfl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double oscillator_sum(const std::vector<Oscillator>& terms, double xi) {
  double sum = 0.0;
  for (const auto& o : terms) {
    sum += o.strength * o.strength /
           (o.resonance * o.resonance + xi * xi + o.damping * xi);
  }
  return 1.0 + sum;
}

void check_oscillators(const std::vector<Oscillator>& terms, const char* what) {
  for (const auto& o : terms) {
    if (!(o.resonance > 0.0) || !std::isfinite(o.resonance)) {
      throw MaterialError(std::string(what) +
                          " oscillator resonance must be positive and finite");
    }
    if (!(o.strength > 0.0) || !std::isfinite(o.strength)) {
      throw MaterialError(std::string(what) +
                          " oscillator strength must be positive and finite");
    }
    if (!(o.damping >= 0.0) || !std::isfinite(o.damping)) {
      throw MaterialError(std::string(what) +
                          " oscillator damping must be non-negative");
    }
  }
}

std::optional<double> strongest(const std::vector<Oscillator>& terms) {
  std::optional<double> best;
  for (const auto& o : terms) {
    const double w = std::hypot(o.resonance, o.strength);
    if (!best || w > *best) best = w;
  }
  return best;
}

}  // namespace

bool MaterialResponse::conductor() const noexcept {
  return std::isinf(epsilon);
}

MaterialResponse make_response(double epsilon, double mu) noexcept {
  return {epsilon, mu, epsilon * mu};
}

bool is_perfect_mirror(const DispersionModel& model) noexcept {
  return std::holds_alternative<PerfectMirror>(model);
}

std::optional<MirrorKind> perfect_mirror_kind(
    const DispersionModel& model) noexcept {
  if (const auto* p = std::get_if<PerfectMirror>(&model)) return p->kind;
  return std::nullopt;
}

void validate(const DispersionModel& model) {
  std::visit(
      overloaded{
          [](const ConstantMedium& m) {
            if (!(m.epsilon >= 1.0) || !std::isfinite(m.epsilon)) {
              throw MaterialError("constant epsilon must be finite and >= 1");
            }
            if (!(m.mu >= 1.0) || !std::isfinite(m.mu)) {
              throw MaterialError("constant mu must be finite and >= 1");
            }
          },
          [](const DrudeMetal& m) {
            if (!(m.plasma > 0.0) || !std::isfinite(m.plasma)) {
              throw MaterialError("Drude plasma frequency must be positive");
            }
            if (!(m.damping >= 0.0) || !std::isfinite(m.damping)) {
              throw MaterialError("Drude damping must be non-negative");
            }
            check_oscillators(m.mu_oscillators, "mu");
          },
          [](const LorentzMedium& m) {
            check_oscillators(m.epsilon, "epsilon");
            check_oscillators(m.mu, "mu");
          },
          [](const PerfectMirror&) {},
      },
      model);
}

MaterialResponse response_at(const DispersionModel& model, double xi) {
  if (!(xi >= 0.0)) {
    throw MaterialError("imaginary frequency must be non-negative");
  }
  return std::visit(
      overloaded{
          [](const ConstantMedium& m) { return make_response(m.epsilon, m.mu); },
          [xi](const DrudeMetal& m) {
            const double mu = oscillator_sum(m.mu_oscillators, xi);
            if (xi == 0.0) {
              return make_response(std::numeric_limits<double>::infinity(), mu);
            }
            const double eps = 1.0 + m.plasma * m.plasma / (xi * (xi + m.damping));
            return make_response(eps, mu);
          },
          [xi](const LorentzMedium& m) {
            return make_response(oscillator_sum(m.epsilon, xi),
                                 oscillator_sum(m.mu, xi));
          },
          [](const PerfectMirror&) -> MaterialResponse {
            throw MaterialError(
                "a perfect mirror has no response function; use its reflection "
                "coefficients directly");
          },
      },
      model);
}

MaterialResponse static_response(const DispersionModel& model) {
  return response_at(model, 0.0);
}

std::optional<double> transparency_frequency(
    const DispersionModel& model) noexcept {
  return std::visit(
      overloaded{
          [](const ConstantMedium&) -> std::optional<double> {
            return std::nullopt;
          },
          [](const DrudeMetal& m) -> std::optional<double> {
            const auto mu = strongest(m.mu_oscillators);
            return mu ? std::max(*mu, m.plasma) : m.plasma;
          },
          [](const LorentzMedium& m) -> std::optional<double> {
            const auto e = strongest(m.epsilon);
            const auto u = strongest(m.mu);
            if (e && u) return std::max(*e, *u);
            return e ? e : u;
          },
          [](const PerfectMirror&) -> std::optional<double> {
            return std::nullopt;
          },
      },
      model);
}

std::string describe(const DispersionModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ConstantMedium& m) {
                   os << "constant(eps=" << m.epsilon << ", mu=" << m.mu << ")";
                 },
                 [&](const DrudeMetal& m) {
                   os << "drude(wp=" << m.plasma << ", gamma=" << m.damping
                      << ", mu_terms=" << m.mu_oscillators.size() << ")";
                 },
                 [&](const LorentzMedium& m) {
                   os << "lorentz(eps_terms=" << m.epsilon.size()
                      << ", mu_terms=" << m.mu.size() << ")";
                 },
                 [&](const PerfectMirror& m) {
                   os << (m.kind == MirrorKind::conducting
                              ? "perfect(conducting)"
                              : "perfect(permeable)");
                 },
             },
             model);
  return os.str();
}

}  // namespace vfl
