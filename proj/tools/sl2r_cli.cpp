// Command-line workbench for the projective-model kernel: distances,
// ball volumes, sphere meshes, prism data, packings and (p,q) sweeps.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl2r/errors.hpp"
#include "sl2r/geodesics.hpp"
#include "sl2r/model.hpp"
#include "sl2r/packing.hpp"
#include "sl2r/tiling.hpp"
#include "sl2r/volumes.hpp"

using nlohmann::json;

namespace {

sl2r::QuadratureSpec quad_spec_from_env() {
  sl2r::QuadratureSpec spec;
  if (const char* env = std::getenv("SL2R_QUAD_TOL")) {
    const double tol = std::atof(env);
    if (tol > 0.0) {
      spec.abs_tol = tol;
      spec.rel_tol = tol;
    }
  }
  return spec;
}

// All file output goes through a temp file + rename so readers never see
// a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw sl2r::Error("cannot open output file: " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw sl2r::Error("cannot move output into place: " + path);
}

json spec_json(const sl2r::QuadratureSpec& spec) {
  return {{"abs_tol", spec.abs_tol},
          {"rel_tol", spec.rel_tol},
          {"max_subdivisions", spec.max_subdivisions},
          {"rule", spec.rule == sl2r::QuadratureRule::GaussLegendre
                       ? "gauss-legendre"
                       : "adaptive-simpson"},
          {"nodes", spec.nodes}};
}

json point_json(const sl2r::ProjectivePoint& p) {
  const sl2r::HyperboloidCoords h = sl2r::to_hyperboloid(p);
  return {{"x0", p.x0}, {"x1", p.x1}, {"x2", p.x2}, {"x3", p.x3},
          {"r", h.r},   {"theta", h.theta},         {"phi", h.phi}};
}

json packing_json(const sl2r::PackingResult& r) {
  return {{"p", r.params.p},
          {"q", r.params.q},
          {"rho_candidates",
           {{"vertex_distance", r.r1},
            {"half_height", r.r2},
            {"screw_image", r.r3},
            {"vertex_distance_halved", r.r1_halved}}},
          {"rho_opt", r.rho_opt},
          {"vol_ball", r.vol_ball},
          {"vol_prism", r.vol_prism},
          {"density", r.density},
          {"limiting_constraint",
           sl2r::limiting_constraint_name(r.limiting_constraint)},
          {"distance_residual", r.distance_residual}};
}

// Octahedron subdivided at frequency res/2: directions on the unit
// sphere mapped through the geodesic sphere parametrization.
std::string sphere_mesh_obj(double rho, int res) {
  const int f = std::max(1, res / 2);
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;
  std::map<std::tuple<int, int, int>, int> index;

  auto vertex_at = [&](int ix, int iy, int iz) {
    const auto key = std::make_tuple(ix, iy, iz);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    double ux = static_cast<double>(ix), uy = static_cast<double>(iy),
           uz = static_cast<double>(iz);
    const double norm = std::sqrt(ux * ux + uy * uy + uz * uz);
    ux /= norm;
    uy /= norm;
    uz /= norm;
    const double alpha = std::asin(std::clamp(ux, -1.0, 1.0));
    const double lambda = std::atan2(uz, uy);
    const sl2r::EuclideanModelPoint e =
        sl2r::geodesic_point({rho, lambda, alpha});
    const int id = static_cast<int>(vertices.size());
    vertices.push_back({e.x, e.y, e.z});
    index.emplace(key, id);
    return id;
  };

  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        // lattice (i, j, k), i + j + k = f, on the octant face
        const bool flip = (sx * sy * sz) < 0;  // keep consistent winding
        for (int i = 0; i < f; ++i)
          for (int j = 0; j + i < f; ++j) {
            const int k = f - 1 - i - j;
            int v0 = vertex_at(sx * (i + 1), sy * j, sz * k);
            int v1 = vertex_at(sx * i, sy * (j + 1), sz * k);
            int v2 = vertex_at(sx * i, sy * j, sz * (k + 1));
            if (flip) std::swap(v1, v2);
            faces.push_back({v0, v1, v2});
            if (k > 0) {
              int w0 = vertex_at(sx * (i + 1), sy * (j + 1), sz * (k - 1));
              int w1 = vertex_at(sx * i, sy * (j + 1), sz * k);
              int w2 = vertex_at(sx * (i + 1), sy * j, sz * k);
              if (flip) std::swap(w1, w2);
              faces.push_back({w0, w1, w2});
            }
          }
      }

  std::ostringstream os;
  os.precision(12);
  os << "# geodesic sphere, rho = " << rho << ", " << faces.size()
     << " triangles\n";
  for (const auto& v : vertices)
    os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : faces)
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"SL(2,R)~ geometry workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --out after the subcommand name
  std::string out_path = "-";
  app.add_option("--out", out_path, "Output file (default: stdout)")
      ->capture_default_str();

  const sl2r::QuadratureSpec spec = quad_spec_from_env();

  // distance
  auto* cmd_distance =
      app.add_subcommand("distance", "Geodesic distance from the origin");
  double dx = 0, dy = 0, dz = 0, dr = 0, dtheta = 0, dphi = 0;
  auto* ox = cmd_distance->add_option("--x", dx, "Model x coordinate");
  cmd_distance->add_option("--y", dy, "Model y coordinate")->needs(ox);
  cmd_distance->add_option("--z", dz, "Model z coordinate")->needs(ox);
  auto* orr = cmd_distance->add_option("--r", dr, "Radial coordinate");
  cmd_distance->add_option("--theta", dtheta, "Polar angle")->needs(orr);
  cmd_distance->add_option("--phi", dphi, "Fibre coordinate")->needs(orr);
  orr->excludes(ox);

  // ballvol
  auto* cmd_ballvol =
      app.add_subcommand("ballvol", "Volume of the geodesic ball B(rho)");
  double bv_rho = 0.0;
  bool bv_mc = false;
  long long bv_samples = 1000000;
  std::uint64_t bv_seed = 1;
  cmd_ballvol->add_option("--rho", bv_rho, "Ball radius")->required();
  cmd_ballvol->add_flag("--mc", bv_mc, "Also run the Monte-Carlo oracle");
  cmd_ballvol->add_option("--samples", bv_samples, "Monte-Carlo sample count")
      ->capture_default_str();
  cmd_ballvol->add_option("--seed", bv_seed, "Monte-Carlo seed")
      ->capture_default_str();

  // sphere-mesh
  auto* cmd_mesh =
      app.add_subcommand("sphere-mesh", "Triangulated geodesic sphere (OBJ)");
  double sm_rho = 1.3;
  int sm_res = 64;
  cmd_mesh->add_option("--rho", sm_rho, "Sphere radius")->required();
  cmd_mesh->add_option("--res", sm_res, "Resolution (2 res^2 triangles)")
      ->capture_default_str();

  // prism
  auto* cmd_prism = app.add_subcommand("prism", "Prism tiling data for (p, q)");
  int pp = 0, pq = 0;
  int curve_samples = 33;
  cmd_prism->add_option("--p", pp, "Rotation order about the origin fibre")
      ->required();
  cmd_prism->add_option("--q", pq, "Rotation order about the vertex fibre")
      ->required();
  cmd_prism->add_option("--curve-samples", curve_samples, "Side-curve samples")
      ->capture_default_str();

  // pack
  auto* cmd_pack =
      app.add_subcommand("pack", "Densest ball packing under the (p, q) group");
  int kp = 0, kq = 0;
  cmd_pack->add_option("--p", kp, "Rotation order about the origin fibre")
      ->required();
  cmd_pack->add_option("--q", kq, "Rotation order about the vertex fibre")
      ->required();

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "Packing sweep over (p, q)");
  int p_min = 3, p_max = 10, q_min = 3, q_max = 20, jobs = 1;
  std::string cache_path;
  cmd_sweep->add_option("--p-min", p_min)->capture_default_str();
  cmd_sweep->add_option("--p-max", p_max)->capture_default_str();
  cmd_sweep->add_option("--q-min", q_min)->capture_default_str();
  cmd_sweep->add_option("--q-max", q_max)->capture_default_str();
  cmd_sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  cmd_sweep->add_option("--cache", cache_path, "JSON result cache file");

  CLI11_PARSE(app, argc, argv);

  json config = {{"quadrature", spec_json(spec)}, {"out", out_path}};

  if (cmd_distance->parsed()) {
    sl2r::ProjectivePoint p;
    if (*ox) {
      p = sl2r::from_euclidean({dx, dy, dz});
      config["point"] = {{"x", dx}, {"y", dy}, {"z", dz}};
    } else if (*orr) {
      p = sl2r::from_hyperboloid({dr, dtheta, dphi});
      config["point"] = {{"r", dr}, {"theta", dtheta}, {"phi", dphi}};
    } else {
      std::cerr << "distance: give either --x/--y/--z or --r/--theta/--phi\n";
      return 1;
    }
    const sl2r::DistanceResult res = sl2r::distance_from_origin(p);
    json j = {{"config", config},
              {"d", res.d},
              {"s", res.geodesic.s},
              {"lambda", res.geodesic.lambda},
              {"alpha", res.geodesic.alpha},
              {"residual", res.residual},
              {"branches_found", res.branches_found}};
    write_atomic(out_path, j.dump(1) + "\n");
  } else if (cmd_ballvol->parsed()) {
    config["rho"] = bv_rho;
    json j = {{"config", config}, {"volume", sl2r::ball_volume(bv_rho, spec)}};
    if (bv_mc) {
      config["samples"] = bv_samples;
      config["seed"] = bv_seed;
      j["config"] = config;
      const sl2r::McEstimate mc =
          sl2r::ball_volume_mc_oracle(bv_rho, bv_samples, bv_seed);
      j["mc_estimate"] = mc.estimate;
      j["mc_std_error"] = mc.std_error;
    }
    write_atomic(out_path, j.dump(1) + "\n");
  } else if (cmd_mesh->parsed()) {
    write_atomic(out_path, sphere_mesh_obj(sm_rho, sm_res));
  } else if (cmd_prism->parsed()) {
    const sl2r::PrismData d = sl2r::build_generators({pp, pq});
    const sl2r::PresentationReport report = sl2r::verify_presentation(d);
    const sl2r::RadialCurve curve = sl2r::base_curve(d);
    json relators = json::array();
    for (const auto& c : report.relators)
      relators.push_back({{"word", c.word},
                          {"residual", c.residual},
                          {"phi_shift", c.phi_shift},
                          {"pass", c.pass}});
    json verts = json::array();
    for (const auto& v : d.vertices) verts.push_back(point_json(v));
    json samples = json::array();
    for (int i = 0; i < curve_samples; ++i) {
      const double theta =
          curve.theta_start +
          (curve.theta_end - curve.theta_start) * i / (curve_samples - 1);
      samples.push_back({{"theta", theta}, {"r", curve.r_of_theta(theta)}});
    }
    config["p"] = pp;
    config["q"] = pq;
    json j = {{"config", config},
              {"b", d.b},
              {"Phi", d.Phi},
              {"vertices", verts},
              {"H", point_json(d.f0_foot)},
              {"r_H", d.r_H},
              {"curve", samples},
              {"vol_prism", sl2r::prism_volume(d, spec)},
              {"relations", relators},
              {"origin_images",
               {{"ab", point_json(sl2r::origin() * (d.gen_a * d.gen_b))},
                {"b", point_json(sl2r::origin() * d.gen_b)}}}};
    write_atomic(out_path, j.dump(1) + "\n");
  } else if (cmd_pack->parsed()) {
    config["p"] = kp;
    config["q"] = kq;
    json j = packing_json(sl2r::pack({kp, kq}, spec));
    j["config"] = config;
    write_atomic(out_path, j.dump(1) + "\n");
  } else if (cmd_sweep->parsed()) {
    const sl2r::SweepResult res =
        sl2r::sweep(p_min, p_max, q_min, q_max, spec, jobs, cache_path);
    std::ostringstream csv;
    csv.precision(10);
    csv << "p,q,rho_opt,vol_ball,vol_prism,density,limiting_constraint,"
           "distance_residual,skip_reason\n";
    for (const auto& cell : res.cells) {
      if (cell.ok) {
        const auto& r = cell.result;
        csv << cell.p << ',' << cell.q << ',' << r.rho_opt << ',' << r.vol_ball
            << ',' << r.vol_prism << ',' << r.density << ','
            << sl2r::limiting_constraint_name(r.limiting_constraint) << ','
            << r.distance_residual << ",\n";
      } else {
        csv << cell.p << ',' << cell.q << ",,,,,,,\"" << cell.skip_reason
            << "\"\n";
      }
    }
    write_atomic(out_path, csv.str());
    if (res.argmax_index >= 0) {
      const auto& best = res.cells[static_cast<size_t>(res.argmax_index)].result;
      std::cerr << "max density " << best.density << " at (" << best.params.p
                << "," << best.params.q << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sl2r::Error& e) {
    json err = {{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
