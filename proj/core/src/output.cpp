#include "recirc/output.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace recirc {

namespace {

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

static_assert(std::endian::native == std::endian::little,
              "RCF1 sidecar assumes a little-endian host");

void write_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_field(std::ofstream& out, const Vector& v) {
    write_u64(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

std::string timeseries_csv(const ScenarioResult& result) {
    std::ostringstream o;
    o << "step,time_s,mean_upper_K,theta_min_K,theta_max_K,theta_l2,div_v_l2,"
         "picard_iters,uzawa_iters,energy1,energy2,energy3\n";
    for (const auto& d : result.rows) {
        o << d.step << ',' << fmt(d.time_s) << ',' << fmt(d.mean_upper_K) << ','
          << fmt(d.theta_min_K) << ',' << fmt(d.theta_max_K) << ',' << fmt(d.theta_l2) << ','
          << fmt(d.div_v_l2) << ',' << d.picard_iters << ',' << d.uzawa_iters << ','
          << fmt(d.energy1) << ',' << fmt(d.energy2) << ',' << fmt(d.energy3) << '\n';
    }
    return o.str();
}

void write_timeseries_csv(const ScenarioResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << timeseries_csv(result);
    if (!out) throw io_error("write failed: " + path);
}

void write_vtk_snapshot(const Mesh& mesh, const DofMap& dm, const Vector& theta, const Vector& v,
                        const Vector& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);

    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();
    out << "# vtk DataFile Version 3.0\n";
    out << "reservoir recirculation snapshot\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const auto& pt : mesh.vertices) out << fmt(pt.x) << ' ' << fmt(pt.y) << " 0\n";
    out << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& tr : mesh.triangles) out << "3 " << tr[0] << ' ' << tr[1] << ' ' << tr[2] << '\n';
    out << "CELL_TYPES " << nt << '\n';
    for (int t = 0; t < nt; ++t) out << "5\n";

    out << "POINT_DATA " << nv << '\n';
    out << "SCALARS theta double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int i = 0; i < nv; ++i) out << fmt(theta[i]) << '\n';
    out << "VECTORS velocity double\n";
    for (int i = 0; i < nv; ++i) out << fmt(v[2 * i]) << ' ' << fmt(v[2 * i + 1]) << " 0\n";

    out << "CELL_DATA " << nt << '\n';
    out << "SCALARS pressure double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (const auto& tr : mesh.triangles)
        out << fmt((p[tr[0]] + p[tr[1]] + p[tr[2]]) / 3.0) << '\n';
    if (!out) throw io_error("write failed: " + path);
    (void)dm;
}

void write_rcf1(const Vector& theta, const Vector& v, const Vector& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write("RCF1", 4);
    write_field(out, theta);
    write_field(out, v);
    write_field(out, p);
    if (!out) throw io_error("write failed: " + path);
}

Rcf1Fields read_rcf1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RCF1", 4) != 0) throw io_error("bad RCF1 magic in " + path);
    Rcf1Fields f;
    for (Vector* v : {&f.theta, &f.v, &f.p}) {
        std::uint64_t n = 0;
        in.read(reinterpret_cast<char*>(&n), sizeof n);
        v->resize(n);
        in.read(reinterpret_cast<char*>(v->data()), static_cast<std::streamsize>(n * sizeof(double)));
        if (!in) throw io_error("truncated RCF1 file: " + path);
    }
    return f;
}

DirLock::DirLock(const std::string& dir) {
    std::filesystem::create_directories(dir);
    lock_path_ = (std::filesystem::path(dir) / ".lock").string();
    const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0)
        throw io_error("output directory is locked by another writer: " + dir +
                       " (remove " + lock_path_ + " if stale)");
    ::close(fd);
}

DirLock::~DirLock() { ::unlink(lock_path_.c_str()); }

}  // namespace recirc
