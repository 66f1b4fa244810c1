#include "pdeiss/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"

namespace pdeiss::csvio {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_bound_report_csv(const bounds::BoundReport& rep,
                            const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "t,lhs,rhs,margin\n";
    for (const auto& r : rep.records) {
        out << format_double(r.t) << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.margin) << '\n';
    }
    out << "# summary,name=" << rep.name << ",min_margin=" << format_double(rep.min_margin)
        << ",satisfied=" << (rep.satisfied ? 1 : 0) << ",tol=" << format_double(rep.tol)
        << ",relative=" << (rep.relative ? 1 : 0);
    if (rep.admissibility) {
        out << ",admissibility_value=" << format_double(rep.admissibility->value)
            << ",admissibility_threshold=" << format_double(rep.admissibility->threshold)
            << ",admissible=" << (rep.admissibility->pass ? 1 : 0);
    }
    out << '\n';
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "t,l2,sup,boundary,forcing_sup,forcing_l2\n";
    const Grid1D& g = traj.grid();
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        const auto f = traj.field(j);
        out << format_double(traj.times()[j]) << ',' << format_double(l2_norm(f, g)) << ','
            << format_double(lp_norm(f, g, inf_order)) << ','
            << format_double(traj.boundary_history()[j]) << ','
            << format_double(traj.forcing_sup_history()[j]) << ','
            << format_double(traj.forcing_l2_history()[j]) << '\n';
    }
}

void write_fields_csv(const Trajectory& traj, const std::filesystem::path& path,
                      std::size_t max_rows) {
    std::ofstream out = open_out(path);
    const std::size_t count = traj.samples();
    const std::size_t stride = count <= max_rows ? 1 : (count + max_rows - 1) / max_rows;
    out << "t";
    for (int i = 0; i < traj.grid().n_nodes; ++i) {
        out << ",x" << format_double(traj.grid().node(i));
    }
    out << '\n';
    for (std::size_t j = 0; j < count; j += stride) {
        out << format_double(traj.times()[j]);
        for (double v : traj.field(j)) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_kernel_csv(const backstepping::Kernel& k, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "x,y,value\n";
    const Grid1D& g = k.grid();
    for (int i = 0; i < g.n_nodes; ++i) {
        for (int j = 0; j <= i; ++j) {
            out << format_double(g.node(i)) << ',' << format_double(g.node(j)) << ','
                << format_double(k.value(i, j)) << '\n';
        }
    }
}

std::vector<std::string> write_plot_pair(const bounds::BoundReport& rep,
                                         const std::filesystem::path& dir) {
    const std::string lhs_name = rep.name + "_lhs.dat";
    const std::string rhs_name = rep.name + "_rhs.dat";
    std::ofstream lhs = open_out(dir / lhs_name);
    std::ofstream rhs = open_out(dir / rhs_name);
    for (const auto& r : rep.records) {
        lhs << format_double(r.t) << ' ' << format_double(r.lhs) << '\n';
        rhs << format_double(r.t) << ' ' << format_double(r.rhs) << '\n';
    }
    return {lhs_name, rhs_name};
}

}  // namespace pdeiss::csvio
