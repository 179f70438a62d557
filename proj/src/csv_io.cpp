#include "nkpolicy/csv_io.hpp"

#include <cstdio>
#include <fstream>

#include "nkpolicy/errors.hpp"

namespace nkpolicy {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string format_irf_csv(const IRFPath& path) {
    std::string out = "t,pi,x,z\n";
    for (int t = 0; t < path.horizon; ++t) {
        out += std::to_string(t);
        out += ',';
        out += num(path.pi[t]);
        out += ',';
        out += num(path.x[t]);
        out += ',';
        out += num(path.z[t]);
        out += '\n';
    }
    return out;
}

std::string format_sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
    std::string out = "axis,value,f_pi,lambda,classification,bifurcation\n";
    for (const SweepRow& row : rows) {
        out += to_string(axis);
        out += ',';
        out += num(row.axis_value);
        out += ',';
        out += num(row.f_pi);
        out += ',';
        out += num(row.lambda);
        out += ',';
        out += to_string(row.classification);
        out += ',';
        if (row.bifurcation) {
            out += to_string(*row.bifurcation);
        }
        out += '\n';
    }
    return out;
}

std::string format_stress_csv(const MisspecReport& report) {
    // Invalid grid points keep their offsets but leave the outcome columns
    // empty: they are excluded from the stable fraction.
    std::string out = "dbeta,dkappa,drho,diverged,divergence_horizon\n";
    for (const StressPoint& point : report.points) {
        out += num(point.dbeta);
        out += ',';
        out += num(point.dkappa);
        out += ',';
        out += num(point.drho);
        out += ',';
        if (point.status != StressPointStatus::InvalidParams) {
            out += point.status == StressPointStatus::Diverged ? '1' : '0';
        }
        out += ',';
        if (point.divergence_horizon) {
            out += std::to_string(*point.divergence_horizon);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidParams("cannot open output file: " + path);
    }
    out << contents;
    if (!out) {
        throw InvalidParams("write failed: " + path);
    }
}

} // namespace nkpolicy
