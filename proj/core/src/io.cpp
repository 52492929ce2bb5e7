#include "homent/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace homent {
namespace {

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(lineno) + ": " + what);
}

Rational parse_rational(const std::string& s, int lineno) {
  const std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(lineno, "bad rational '" + s + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

LatticeWindow read_window(std::istream& in) {
  std::string line;
  int lineno = 0;
  int dim = -1;
  std::vector<std::vector<Coord>> pts;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (blank(line)) continue;
    if (dim < 0) {
      if (std::sscanf(line.c_str(), " d=%d", &dim) != 1 || dim < 1)
        fail(lineno, "expected window header 'd=<dim>'");
      continue;
    }
    std::stringstream ss(line);
    std::vector<Coord> p;
    Coord c;
    while (ss >> c) p.push_back(c);
    if (static_cast<int>(p.size()) != dim)
      fail(lineno, "point has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(dim));
    pts.push_back(std::move(p));
  }
  if (dim < 0) throw std::runtime_error("window file has no 'd=<dim>' header");
  return LatticeWindow::from_points(dim, std::move(pts));
}

LatticeWindow load_window(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open window file: " + path);
  return read_window(in);
}

void write_window(const LatticeWindow& w, std::ostream& out) {
  out << "d=" << w.dim() << "\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto p = w.point(i);
    for (std::size_t a = 0; a < p.size(); ++a) out << (a ? " " : "") << p[a];
    out << "\n";
  }
}

void save_window(const LatticeWindow& w, const std::string& path) {
  auto out = open_out(path);
  write_window(w, out);
}

MoleculeSpec read_molecule(std::istream& in) {
  std::string line;
  int lineno = 0;
  int dim = -1, rank = -1;
  std::vector<CohClass> basis;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (blank(line)) continue;
    if (dim < 0) {
      if (std::sscanf(line.c_str(), " m=%d B=%d", &dim, &rank) != 2 || dim < 0 || rank < 1)
        fail(lineno, "expected molecule header 'm=<dim> B=<rank>'");
      continue;
    }
    int d = 0;
    char vbuf[64] = {0};
    if (std::sscanf(line.c_str(), " d=%d v=%63s", &d, vbuf) != 2)
      fail(lineno, "expected class line 'd=<int> v=<p/q>'");
    basis.push_back({d, parse_rational(vbuf, lineno)});
  }
  if (dim < 0) throw std::runtime_error("molecule file has no 'm=<dim> B=<rank>' header");
  if (static_cast<int>(basis.size()) != rank)
    throw std::runtime_error("molecule file declares B=" + std::to_string(rank) + " but lists " +
                             std::to_string(basis.size()) + " classes");
  return MoleculeSpec(dim, std::move(basis));
}

MoleculeSpec load_molecule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open molecule file: " + path);
  return read_molecule(in);
}

void write_molecule(const MoleculeSpec& spec, std::ostream& out) {
  out << "m=" << spec.dim_m() << " B=" << spec.total_rank() << "\n";
  for (const auto& cls : spec.basis())
    out << "d=" << cls.degree << " v=" << cls.level.num << "/" << cls.level.den << "\n";
}

void save_molecule(const MoleculeSpec& spec, const std::string& path) {
  auto out = open_out(path);
  write_molecule(spec, out);
}

MoleculeSpec resolve_molecule(const std::string& name_or_path) {
  if (name_or_path == "s1" || name_or_path == "S1") return MoleculeSpec::circle();
  if (name_or_path == "torus" || name_or_path == "t2" || name_or_path == "T2")
    return MoleculeSpec::torus();
  return load_molecule(name_or_path);
}

void write_profile_csv(const EntropyProfile& profile, std::ostream& out) {
  const bool exact = profile.params().mode == ProfileMode::exact_n;
  out << "ell,c,value,mode,n\n";
  for (std::size_t i = 0; i < profile.rows(); ++i)
    for (std::size_t j = 0; j < profile.cols(); ++j)
      out << format_double(profile.ell(i)) << "," << format_double(profile.c(j)) << ","
          << format_double(profile.value(i, j)) << "," << (exact ? "exact" : "asymptotic")
          << "," << (exact ? profile.params().n : 0) << "\n";
}

void write_points_csv(const std::vector<CriticalPoint>& points, std::ostream& out) {
  const long n = points.empty() ? 0 : points.front().angles.size();
  for (long i = 0; i < n; ++i) out << "theta_" << i << ",";
  out << "value,morse_index,grad_norm\n";
  for (const auto& p : points) {
    for (long i = 0; i < p.angles.size(); ++i) out << format_double(p.angles[i]) << ",";
    out << format_double(p.value) << "," << p.morse_index << "," << format_double(p.grad_norm)
        << "\n";
  }
}

void write_spectrum_csv(const SpectrumHistogram& hist, std::ostream& out) {
  out << "value,multiplicity\n";
  for (const auto& [v, m] : hist.entries) out << format_double(v) << "," << m << "\n";
}

}  // namespace homent
