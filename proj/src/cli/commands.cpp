#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "isogeo/cli.hpp"
#include "isogeo/errors.hpp"

namespace isogeo::cli {

void write_curvature_csv(const SurfacePatch& s, int nu, int nv, std::ostream& out) {
  out << "u,v,x,y,z,K,H,disc,class,xi1,xi2,xi3\n";
  for (const auto& [u, v] : grid_points(s.domain(), nu, nv)) {
    out << format_number(u) << ',' << format_number(v) << ',';
    try {
      const PointFrame f = frame_at(s, u, v);
      const CurvatureReport c = curvatures_from_frame(f);
      for (double x : {f.position[0], f.position[1], f.position[2], c.K, c.H, c.discriminant}) {
        out << format_number(x) << ',';
      }
      out << to_string(c.point_class);
      for (int i = 0; i < 3; ++i) out << ',' << format_number(f.xi[i]);
      out << '\n';
    } catch (const GeometryError& e) {
      out << ",,,,,," << (e.kind() == ErrorKind::NotAdmissible ? "inadmissible" : "undefined")
          << ",,,\n";
    }
  }
}

GeodesicTrace write_geodesic_csv(const SurfacePatch& s, GeodesicKind kind, double u0, double v0,
                                 double du0, double dv0, double t_end, double step,
                                 std::ostream& out) {
  GeodesicTrace trace = integrate(s, kind, u0, v0, du0, dv0, t_end, step);
  out << "t,u,v,du,dv,x,y,z,parallel_residual\n";
  for (const auto& p : trace.samples) {
    out << format_number(p.t) << ',' << format_number(p.u) << ',' << format_number(p.v) << ','
        << format_number(p.du) << ',' << format_number(p.dv) << ','
        << format_number(p.position[0]) << ',' << format_number(p.position[1]) << ','
        << format_number(p.position[2]) << ',' << format_number(p.parallel_residual) << '\n';
  }
  return trace;
}

void write_mesh(const SurfacePatch& s, int nu, int nv, MeshFormat format, std::ostream& out) {
  const auto pts = grid_points(s.domain(), nu, nv);
  if (format == MeshFormat::Csv) out << "u,v,x,y,z\n";
  for (const auto& [u, v] : pts) {
    const Vec3 x = value(s.evaluate(u, v));
    if (!x.allFinite()) {
      throw GeometryError(ErrorKind::DomainError, "immersion is not finite at a grid point");
    }
    if (format == MeshFormat::Obj) {
      out << "v " << format_number(x[0]) << ' ' << format_number(x[1]) << ' '
          << format_number(x[2]) << '\n';
    } else {
      out << format_number(u) << ',' << format_number(v) << ',' << format_number(x[0]) << ','
          << format_number(x[1]) << ',' << format_number(x[2]) << '\n';
    }
  }
  if (format != MeshFormat::Obj) return;
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const int a = i * nv + j + 1, b = a + nv, c = b + 1, d = a + 1;
      out << "f " << a << ' ' << b << ' ' << c << '\n';
      out << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }
}

namespace {

std::pair<double, double> parse_pair(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  double a = 0, b = 0;
  bool ok = comma != std::string::npos;
  if (ok) {
    const char* p = text.data();
    const auto r1 = std::from_chars(p, p + comma, a);
    const auto r2 = std::from_chars(p + comma + 1, p + text.size(), b);
    ok = r1.ec == std::errc() && r1.ptr == p + comma && r2.ec == std::errc() &&
         r2.ptr == p + text.size();
  }
  if (!ok) throw SpecError(std::string(flag) + " expects two numbers \"a,b\", got \"" + text + "\"");
  return {a, b};
}

std::optional<double> fd_step_from_env() {
  const char* env = std::getenv("ISOGEO_FD_STEP");
  if (!env || !*env) return std::nullopt;
  const std::string text(env);
  double h = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), h);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || !(h > 0)) {
    throw SpecError("ISOGEO_FD_STEP must be a positive number, got \"" + text + "\"");
  }
  return h;
}

// Either the given stream or a freshly opened file.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("error writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, geodesics and identity checks for surfaces in isotropic spaces",
               "isogeo"};
  app.require_subcommand(1);

  std::string spec_arg, output, grid = "20x20";

  auto* curvature = app.add_subcommand("curvature", "K, H and point class on a parameter grid");
  curvature->add_option("--spec", spec_arg, "surface spec: JSON file or inline JSON")->required();
  curvature->add_option("--grid", grid, "grid size NUxNV")->capture_default_str();
  curvature->add_option("-o,--output", output, "output file (default stdout)");

  std::string type = "r", start, velocity;
  double t_end = 1.0, step = 1e-3;
  auto* geodesic = app.add_subcommand("geodesic", "integrate an r-geodesic or Levi-Civita geodesic");
  geodesic->add_option("--spec", spec_arg, "surface spec: JSON file or inline JSON")->required();
  geodesic->add_option("--type", type, "r or lc")
      ->check(CLI::IsMember({"r", "lc"}))
      ->capture_default_str();
  geodesic->add_option("--start", start, "start parameters u,v")->required();
  geodesic->add_option("--velocity", velocity, "initial velocity du,dv")->required();
  geodesic->add_option("--t-end", t_end, "final time")->capture_default_str();
  geodesic->add_option("--step", step, "RK4 step")->capture_default_str();
  geodesic->add_option("-o,--output", output, "output file (default stdout)");

  VerifyOptions vopt;
  std::optional<double> tol;
  auto* verify = app.add_subcommand("verify", "run identity checks and print a JSON report");
  auto* vspec = verify->add_option("--spec", spec_arg, "surface spec: JSON file or inline JSON");
  auto* vall = verify->add_flag("--all-catalog", vopt.all_catalog, "check every builtin surface");
  vspec->excludes(vall);
  verify->add_option("--suite", vopt.suite, "flatness|egregium|codazzi|umbilic|minimal|sphere-geodesics|all")
      ->check(CLI::IsMember(
          {"flatness", "egregium", "codazzi", "umbilic", "minimal", "sphere-geodesics", "all"}))
      ->capture_default_str();
  verify->add_option("--samples", vopt.samples, "random points per surface")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", vopt.seed, "PRNG seed")->capture_default_str();
  verify->add_option("--tol", tol, "override every tolerance")->check(CLI::PositiveNumber);
  verify->add_option("-o,--output", output, "output file (default stdout)");

  std::string format = "obj";
  auto* sample = app.add_subcommand("sample", "export grid positions as an OBJ mesh or CSV");
  sample->add_option("--spec", spec_arg, "surface spec: JSON file or inline JSON")->required();
  sample->add_option("--grid", grid, "grid size NUxNV")->capture_default_str();
  sample->add_option("--format", format, "obj or csv")
      ->check(CLI::IsMember({"obj", "csv"}))
      ->capture_default_str();
  sample->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSpecError;
  }

  try {
    if (*curvature) {
      const LoadedSurface s = parse_spec(read_spec_argument(spec_arg));
      const auto [nu, nv] = parse_grid(grid);
      Output o(output, out);
      write_curvature_csv(s.patch, nu, nv, o.get());
      o.finish();
      return kOk;
    }
    if (*geodesic) {
      const LoadedSurface s = parse_spec(read_spec_argument(spec_arg));
      const auto [u0, v0] = parse_pair(start, "--start");
      const auto [du0, dv0] = parse_pair(velocity, "--velocity");
      Output o(output, out);
      const GeodesicTrace trace =
          write_geodesic_csv(s.patch, type == "r" ? GeodesicKind::Relative : GeodesicKind::LeviCivita,
                             u0, v0, du0, dv0, t_end, step, o.get());
      o.finish();
      if (trace.status != TraceStatus::Completed) {
        err << "isogeo: integration stopped at t = " << format_number(trace.t_stop) << ": "
            << trace.note << '\n';
      }
      return kOk;
    }
    if (*verify) {
      if (!vopt.all_catalog) {
        if (spec_arg.empty()) throw SpecError("verify needs --spec or --all-catalog");
        vopt.surface = parse_spec(read_spec_argument(spec_arg));
      }
      vopt.tol = tol;
      vopt.fd_step = fd_step_from_env();
      const VerifyReport report = run_verify(vopt);
      Output o(output, out);
      o.get() << to_json(report) << '\n';
      o.finish();
      return report.overall() ? kOk : kVerifyFailed;
    }
    if (*sample) {
      const LoadedSurface s = parse_spec(read_spec_argument(spec_arg));
      const auto [nu, nv] = parse_grid(grid);
      Output o(output, out);
      write_mesh(s.patch, nu, nv, format == "obj" ? MeshFormat::Obj : MeshFormat::Csv, o.get());
      o.finish();
      return kOk;
    }
  } catch (const SpecError& e) {
    err << "isogeo: " << e.what() << '\n';
    return kSpecError;
  } catch (const ParseError& e) {
    err << "isogeo: " << e.what() << '\n';
    return kSpecError;
  } catch (const IoError& e) {
    err << "isogeo: " << e.what() << '\n';
    return kIoError;
  } catch (const GeometryError& e) {
    err << "isogeo: " << e.what() << '\n';
    return kGeometryError;
  }
  return kSpecError;
}

}  // namespace isogeo::cli
