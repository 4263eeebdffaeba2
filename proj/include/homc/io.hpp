#pragma once

#include <homc/conditions.hpp>
#include <homc/solvers.hpp>
#include <homc/tensor.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homc {

using json = nlohmann::json;

namespace detail {

// 17 significant digits round-trip any double exactly
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Text tensor format: header `order m dim n`, then one line per nonzero
/// `i1 i2 ... im value` with 1-based indices.
inline void write_tensor_text(const StochasticTensor& t, std::ostream& os) {
  os << "order " << t.order() << " dim " << t.dim() << "\n";
  t.for_each_entry([&](std::span<const std::uint32_t> idx, double v) {
    for (std::uint32_t i : idx) os << (i + 1) << ' ';
    os << detail::format_double(v) << "\n";
  });
}

inline StochasticTensor read_tensor_text(std::istream& is) {
  std::string tag_order, tag_dim;
  int order = 0, dim = 0;
  if (!(is >> tag_order >> order >> tag_dim >> dim) || tag_order != "order" ||
      tag_dim != "dim") {
    throw std::runtime_error("tensor file: expected header 'order <m> dim <n>'");
  }
  std::vector<StochasticTensor::Entry> entries;
  StochasticTensor::Entry e;
  e.index.resize(static_cast<std::size_t>(order));
  long long raw = 0;
  while (is >> raw) {
    for (int j = 0; j < order; ++j) {
      if (j > 0 && !(is >> raw)) {
        throw std::runtime_error("tensor file: truncated entry line");
      }
      if (raw < 1 || raw > dim) {
        throw std::runtime_error("tensor file: index " + std::to_string(raw) +
                                 " outside 1.." + std::to_string(dim));
      }
      e.index[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(raw - 1);
    }
    if (!(is >> e.value)) {
      throw std::runtime_error("tensor file: entry is missing its value");
    }
    entries.push_back(e);
  }
  if (!is.eof()) {
    throw std::runtime_error("tensor file: malformed entry line");
  }
  return StochasticTensor::from_entries(order, dim, entries);
}

inline json tensor_to_json(const StochasticTensor& t) {
  json entries = json::array();
  t.for_each_entry([&](std::span<const std::uint32_t> idx, double v) {
    json row = json::array();
    for (std::uint32_t i : idx) row.push_back(i + 1);
    row.push_back(v);
    entries.push_back(std::move(row));
  });
  return json{{"order", t.order()}, {"dim", t.dim()}, {"entries", std::move(entries)}};
}

inline StochasticTensor tensor_from_json(const json& j) {
  const int order = j.at("order").get<int>();
  const int dim = j.at("dim").get<int>();
  std::vector<StochasticTensor::Entry> entries;
  for (const json& row : j.at("entries")) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(order) + 1) {
      throw std::runtime_error("tensor json: entry rows need " +
                               std::to_string(order) + " indices plus a value");
    }
    StochasticTensor::Entry e;
    e.index.resize(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
      const long long raw = row[static_cast<std::size_t>(k)].get<long long>();
      if (raw < 1 || raw > dim) {
        throw std::runtime_error("tensor json: index " + std::to_string(raw) +
                                 " outside 1.." + std::to_string(dim));
      }
      e.index[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(raw - 1);
    }
    e.value = row[static_cast<std::size_t>(order)].get<double>();
    entries.push_back(std::move(e));
  }
  return StochasticTensor::from_entries(order, dim, entries);
}

inline bool has_json_extension(const std::filesystem::path& path) {
  return path.extension() == ".json";
}

/// Reads a tensor (text or JSON by extension) with structural checks only.
inline StochasticTensor read_tensor(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open tensor file: " + path.string());
  try {
    if (has_json_extension(path)) {
      return tensor_from_json(json::parse(is));
    }
    return read_tensor_text(is);
  } catch (const std::exception& ex) {
    throw std::runtime_error(path.string() + ": " + ex.what());
  }
}

/// Reads and gates on stochasticity: columns must sum to one within the load
/// tolerance unless repair is requested, in which case they are rescaled.
inline StochasticTensor load_tensor(const std::filesystem::path& path, bool repair = false) {
  StochasticTensor t = read_tensor(path);
  if (repair) t = t.repaired();
  ValidationResult vr = t.validate();
  if (!vr.ok()) {
    std::ostringstream msg;
    msg << path.string() << ": not a transition probability tensor ("
        << vr.violations.size() << " violation(s); first: ";
    const Violation& v = vr.violations.front();
    if (v.kind == Violation::Kind::NegativeEntry) {
      msg << "negative entry " << v.value << " at (";
    } else {
      msg << "column sum " << v.value << " at tail (";
    }
    for (std::size_t i = 0; i < v.index.size(); ++i) {
      msg << (i ? "," : "") << v.index[i] + 1;
    }
    msg << "))";
    if (!repair) msg << "; rerun with --repair to rescale columns";
    throw std::runtime_error(msg.str());
  }
  return t;
}

inline void write_tensor(const StochasticTensor& t, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write tensor file: " + path.string());
  if (has_json_extension(path)) {
    os << tensor_to_json(t).dump(2) << "\n";
  } else {
    write_tensor_text(t, os);
  }
  if (!os) throw std::runtime_error("error while writing: " + path.string());
}

inline json to_json(const ConditionReport& r) {
  return json{{"delta_m", r.delta_m},
              {"eta_m", r.eta_m},
              {"uniqueness_holds", r.uniqueness_holds},
              {"hopmm2_eta_max", r.hopmm2_eta_max},
              {"hopmm1_beta_max", r.hopmm1_beta_max}};
}

inline json to_json(const SolveReport& r, bool include_wall_time = true) {
  json history = json::array();
  for (const ResidualSample& s : r.residual_history) {
    history.push_back({s.iteration, s.step_norm, s.residual});
  }
  json events = json::array();
  for (const ExtrapolationEvent& e : r.extrapolation_events) {
    events.push_back({{"iteration", e.iteration}, {"accepted", e.accepted}});
  }
  json out{{"method", to_string(r.method)},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"residual", r.residual},
           {"final_x", std::vector<double>(r.final_x.values().data(),
                                           r.final_x.values().data() + r.final_x.size())},
           {"residual_history", std::move(history)},
           {"extrapolation_events", std::move(events)}};
  if (include_wall_time) out["wall_time"] = r.wall_time;
  return out;
}

/// Per-iteration trace for external plotting.
inline void write_trace_csv(const SolveReport& r, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write trace file: " + path.string());
  os << "iteration,step_norm,residual\n";
  for (const ResidualSample& s : r.residual_history) {
    os << s.iteration << ',' << detail::format_double(s.step_norm) << ','
       << detail::format_double(s.residual) << "\n";
  }
}

inline ProbVector read_prob_vector(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open vector file: " + path.string());
  std::vector<double> vals;
  double v = 0.0;
  while (is >> v) vals.push_back(v);
  Vector x(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) x[static_cast<Index>(i)] = vals[i];
  return ProbVector(std::move(x));
}

}  // namespace homc
