// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "fraclap/error.hpp"
#include "fraclap/field_io.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/study.hpp"

namespace fraclap::cli
{

namespace
{

constexpr int default_level = 3;

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Nonlinearity make_nonlinearity(NonlinearityKind k)
{
  return k == NonlinearityKind::None ? Nonlinearity::none() : Nonlinearity::cubic();
}

int single_level(const RunConfig &cfg)
{
  return cfg.levels.empty() ? default_level : cfg.levels.back();
}

std::string output_path(const CommandContext &ctx, const std::string &name)
{
  std::filesystem::create_directories(ctx.out_dir);
  return (std::filesystem::path(ctx.out_dir) / name).string();
}

template <class F>
int guarded(const CommandContext &ctx, F &&body)
{
  std::ostream &err = *ctx.err;
  try
  {
    return body();
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const InvalidArgument &e)
  {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const ConvergenceError &e)
  {
    err << "solver error: " << e.what() << '\n';
    return exit_solver;
  }
  catch (const NumericalError &e)
  {
    err << "solver error: " << e.what() << '\n';
    return exit_solver;
  }
  catch (const IoError &e)
  {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  }
  catch (const std::filesystem::filesystem_error &e)
  {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return exit_solver;
  }
}

}  // namespace

int cmd_state(const RunConfig &cfg, const CommandContext &ctx)
{
  return guarded(ctx, [&] {
    const int level = single_level(cfg);
    auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(level));
    const NonlocalOperator op(mesh, KernelParams::make(cfg.s), cfg.quad);
    const double f = cfg.forcing;
    const Vector rhs = load_vector(*mesh, [f](const Point &) { return f; });
    const StateField u = solve_state(op, make_nonlinearity(cfg.nonlinearity), rhs, nullptr,
                                     cfg.newton);
    save_nodal_field(output_path(ctx, cfg.output.state), u);
    *ctx.out << "command=state level=" << level << " ndof=" << op.num_dofs()
             << " newton_iters=" << u.newton_iterations << " sup_norm=" << fmt(u.sup_norm())
             << " residual=" << fmt(u.residual) << '\n';
    return static_cast<int>(exit_ok);
  });
}

int cmd_ocp(const RunConfig &cfg, const CommandContext &ctx)
{
  return guarded(ctx, [&] {
    if (cfg.forcing_set)
      throw ConfigError("forcing is only used by the state command");
    const int level = single_level(cfg);
    const auto ms = ManufacturedSolution::make(cfg.s, cfg.alpha, cfg.bounds);
    OCProblem prob = manufactured_problem(ms);
    prob.a = make_nonlinearity(cfg.nonlinearity);
    auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(level));
    const NonlocalOperator op(mesh, KernelParams::make(cfg.s), cfg.quad);
    OCPOptions opt;
    opt.tol = cfg.ocp_tol;
    opt.maxit = cfg.ocp_maxit;
    opt.newton = cfg.newton;
    const auto z0 = ControlField::constant(*mesh, 0.5 * (cfg.bounds.lo + cfg.bounds.hi));
    const OCPSolution sol = solve_ocp(prob, op, z0, opt);
    if (!(sol.residual <= opt.tol))
      throw ConvergenceError("residual " + fmt(sol.residual) + " above tolerance");
    save_control_field(output_path(ctx, cfg.output.control), sol.z);
    save_nodal_field(output_path(ctx, cfg.output.state), sol.u);
    save_nodal_field(output_path(ctx, cfg.output.adjoint), sol.p);
    *ctx.out << "command=ocp level=" << level << " ndof=" << op.num_dofs()
             << " outer_iters=" << sol.iterations << " newton_iters=" << sol.newton_iterations
             << " residual=" << fmt(sol.residual) << " cost=" << fmt(sol.cost_history.back())
             << " err_z_l2=" << fmt(error_control_l2(*mesh, sol.z, ms)) << '\n';
    return static_cast<int>(exit_ok);
  });
}

int cmd_study(const RunConfig &cfg, const CommandContext &ctx)
{
  return guarded(ctx, [&] {
    if (cfg.forcing_set)
      throw ConfigError("forcing is only used by the state command");
    if (cfg.nonlinearity != NonlinearityKind::Cubic)
      throw ConfigError("the convergence study uses the cubic nonlinearity");
    StudyConfig sc;
    sc.s = cfg.s;
    sc.alpha = cfg.alpha;
    sc.bounds = cfg.bounds;
    if (!cfg.levels.empty())
      sc.levels = cfg.levels;
    if (sc.levels.size() < 3)
      throw ConfigError("study needs at least 3 levels");
    sc.quad = cfg.quad;
    sc.ocp.tol = cfg.ocp_tol;
    sc.ocp.maxit = cfg.ocp_maxit;
    sc.ocp.newton = cfg.newton;
    sc.log = [&](const std::string &line) { *ctx.err << line << '\n'; };
    const ConvergenceReport rep = run_convergence_study(sc);

    std::ostringstream csv;
    write_csv(csv, rep);
    const std::string path = output_path(ctx, cfg.output.study);
    std::ofstream os(path, std::ios::binary);
    if (!os)
      throw IoError("cannot open " + path + " for writing");
    os << csv.str();
    os.flush();
    if (!os)
      throw IoError("write to " + path + " failed");

    for (const auto &r : rep.rows)
      *ctx.out << "level=" << r.level << " ndof=" << r.ndof << " err_z_l2=" << fmt(r.err_z_l2)
               << " err_u_energy=" << fmt(r.err_u_energy) << " err_p_energy="
               << fmt(r.err_p_energy) << " outer_iters=" << r.outer_iterations << '\n';
    *ctx.out << "eoc_z=" << fmt(rep.eoc_z.back()) << " eoc_u_energy="
             << fmt(rep.eoc_u_energy.back()) << " eoc_p_energy=" << fmt(rep.eoc_p_energy.back())
             << " eoc_u_l2=" << fmt(rep.eoc_u_l2.back())
             << " slope_z_ndof=" << fmt(rep.ndof_slope(&LevelResult::err_z_l2)) << '\n';
    return static_cast<int>(exit_ok);
  });
}

}  // namespace fraclap::cli
