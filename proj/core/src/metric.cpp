#include "araweat/metrics.hpp"

namespace araweat {

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kWeat:
      return "W";
    case Metric::kEct:
      return "ECT";
    case Metric::kBat:
      return "BAT";
    case Metric::kKm:
      return "KM";
    case Metric::kSts:
      return "STS";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : {Metric::kWeat, Metric::kEct, Metric::kBat, Metric::kKm,
                   Metric::kSts}) {
    if (metric_name(m) == name) return m;
  }
  if (name == "WEAT") return Metric::kWeat;
  return std::nullopt;
}

}  // namespace araweat
