#include "sl2r/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sl2r/errors.hpp"
#include "sl2r/geodesics.hpp"
#include "sl2r/volumes.hpp"

namespace sl2r {

const char* limiting_constraint_name(LimitingConstraint c) {
  switch (c) {
    case LimitingConstraint::VertexDistance: return "VertexDistance";
    case LimitingConstraint::HalfHeight: return "HalfHeight";
    case LimitingConstraint::ScrewImage: return "ScrewImage";
  }
  return "?";
}

std::array<double, 3> rho_candidates(const PrismData& d) {
  const double r1 = std::atanh(d.b);
  const double r2 = d.Phi / 2.0;
  const ProjectivePoint image = origin() * (d.gen_a * d.gen_b);
  const double r3 = distance_from_origin(image).d / 2.0;
  return {r1, r2, r3};
}

PackingResult pack(const TilingParams& params, const QuadratureSpec& spec) {
  const PrismData d = build_generators(params);
  PackingResult res;
  res.params = params;

  res.r1 = std::atanh(d.b);
  res.r1_halved = res.r1 / 2.0;
  res.r2 = d.Phi / 2.0;
  const ProjectivePoint image = origin() * (d.gen_a * d.gen_b);
  const DistanceResult dist = distance_from_origin(image);
  res.r3 = dist.d / 2.0;
  res.distance_residual = dist.residual;

  res.rho_opt = std::min({res.r1, res.r2, res.r3});
  res.limiting_constraint = res.rho_opt == res.r1
                                ? LimitingConstraint::VertexDistance
                                : (res.rho_opt == res.r2
                                       ? LimitingConstraint::HalfHeight
                                       : LimitingConstraint::ScrewImage);
  res.vol_ball = ball_volume(res.rho_opt, spec);
  res.vol_prism = prism_volume(d, spec);
  res.density = res.vol_ball / res.vol_prism;
  return res;
}

namespace {

std::string spec_key(const QuadratureSpec& spec) {
  std::ostringstream os;
  os << spec.abs_tol << '/' << spec.rel_tol << '/' << spec.max_subdivisions << '/'
     << static_cast<int>(spec.rule) << '/' << spec.nodes;
  return os.str();
}

nlohmann::json result_to_json(const PackingResult& r) {
  return {{"p", r.params.p},
          {"q", r.params.q},
          {"r1", r.r1},
          {"r2", r.r2},
          {"r3", r.r3},
          {"r1_halved", r.r1_halved},
          {"rho_opt", r.rho_opt},
          {"vol_ball", r.vol_ball},
          {"vol_prism", r.vol_prism},
          {"density", r.density},
          {"limiting_constraint", limiting_constraint_name(r.limiting_constraint)},
          {"distance_residual", r.distance_residual}};
}

bool result_from_json(const nlohmann::json& j, PackingResult* r) {
  try {
    r->params = {j.at("p").get<int>(), j.at("q").get<long long>()};
    r->r1 = j.at("r1").get<double>();
    r->r2 = j.at("r2").get<double>();
    r->r3 = j.at("r3").get<double>();
    r->r1_halved = j.at("r1_halved").get<double>();
    r->rho_opt = j.at("rho_opt").get<double>();
    r->vol_ball = j.at("vol_ball").get<double>();
    r->vol_prism = j.at("vol_prism").get<double>();
    r->density = j.at("density").get<double>();
    r->distance_residual = j.at("distance_residual").get<double>();
    const std::string lc = j.at("limiting_constraint").get<std::string>();
    r->limiting_constraint = lc == "VertexDistance"
                                 ? LimitingConstraint::VertexDistance
                                 : (lc == "HalfHeight"
                                        ? LimitingConstraint::HalfHeight
                                        : LimitingConstraint::ScrewImage);
    return true;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

}  // namespace

SweepResult sweep(int p_min, int p_max, int q_min, int q_max,
                  const QuadratureSpec& spec, int jobs,
                  const std::string& cache_path) {
  SweepResult out;
  for (int p = p_min; p <= p_max; ++p)
    for (int q = q_min; q <= q_max; ++q) {
      SweepCell cell;
      cell.p = p;
      cell.q = q;
      out.cells.push_back(cell);
    }

  nlohmann::json cache = nlohmann::json::object();
  const std::string key_suffix = "|" + spec_key(spec);
  if (!cache_path.empty()) {
    std::ifstream in(cache_path);
    if (in) {
      try {
        in >> cache;
      } catch (const nlohmann::json::exception&) {
        cache = nlohmann::json::object();
      }
    }
    if (!cache.is_object()) cache = nlohmann::json::object();
  }

  auto run_cell = [&](SweepCell& cell) {
    const TilingParams params{cell.p, cell.q};
    if (!params_valid(params)) {
      std::ostringstream os;
      os << "violates q > 2p/(p-2) = " << 2.0 * cell.p / (cell.p - 2);
      cell.skip_reason = os.str();
      return;
    }
    const std::string key =
        std::to_string(cell.p) + "," + std::to_string(cell.q) + key_suffix;
    if (cache.contains(key) && result_from_json(cache[key], &cell.result)) {
      cell.ok = true;
      return;
    }
    try {
      cell.result = pack(params, spec);
      cell.ok = true;
    } catch (const Error& e) {
      cell.skip_reason = std::string("error: ") + e.what();
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(jobs, static_cast<int>(out.cells.size())));
  if (n_threads <= 1) {
    for (SweepCell& cell : out.cells) run_cell(cell);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (size_t i = t; i < out.cells.size(); i += n_threads)
          run_cell(out.cells[i]);
      });
    for (auto& th : pool) th.join();
  }

  for (size_t i = 0; i < out.cells.size(); ++i) {
    if (!out.cells[i].ok) continue;
    if (out.argmax_index < 0 ||
        out.cells[i].result.density >
            out.cells[static_cast<size_t>(out.argmax_index)].result.density)
      out.argmax_index = static_cast<int>(i);
  }

  if (!cache_path.empty()) {
    for (const SweepCell& cell : out.cells) {
      if (!cell.ok) continue;
      const std::string key =
          std::to_string(cell.p) + "," + std::to_string(cell.q) + key_suffix;
      cache[key] = result_to_json(cell.result);
    }
    const std::string tmp = cache_path + ".tmp";
    std::ofstream outf(tmp);
    outf << cache.dump(1) << '\n';
    outf.close();
    std::rename(tmp.c_str(), cache_path.c_str());
  }
  return out;
}

}  // namespace sl2r
