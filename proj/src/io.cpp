#include "flc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace flc {

std::string format_double(double x) {
  char buf[40];
  // round-trip exact: try increasing precision
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    double back;
    std::sscanf(buf, "%lf", &back);
    if (back == x) return buf;
  }
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& msg, long line = -1) {
  std::ostringstream os;
  os << "point-set parse error";
  if (line >= 0) os << " (line " << line << ")";
  os << ": " << msg;
  throw std::invalid_argument(os.str());
}

double parse_num(const std::string& tok, long line) {
  double v;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    fail("bad numeric token '" + tok + "'", line);
  if (!std::isfinite(v)) fail("non-finite value '" + tok + "'", line);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool is_numeric_token(const std::string& tok) {
  double v;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

}  // namespace

std::string write_pointset_string(const PointSet& ps) {
  std::ostringstream os;
  os << "# dim=" << ps.dim << "\n";
  os << "# r=" << format_double(ps.r) << "\n";
  os << "# R=" << format_double(ps.R) << "\n";
  os << "# window=";
  for (int a = 0; a < ps.dim; ++a) {
    if (a) os << ";";
    os << format_double(ps.window.lo(a)) << "," << format_double(ps.window.hi(a));
  }
  os << "\n";
  if (ps.has_module()) {
    os << "# basis=";
    for (Index i = 0; i < ps.module_basis.rows(); ++i) {
      if (i) os << ";";
      for (Index j = 0; j < ps.module_basis.cols(); ++j) {
        if (j) os << ",";
        os << format_double(ps.module_basis(i, j));
      }
    }
    os << "\n";
  }
  if (ps.has_colors()) {
    os << "# colors=";
    for (std::size_t i = 0; i < ps.color_names.size(); ++i) {
      if (i) os << ",";
      os << ps.color_names[i];
    }
    os << "\n";
  }
  os << "# delone=" << (ps.claims_delone ? 1 : 0) << "\n";
  if (!ps.provenance.empty()) os << "# provenance=" << ps.provenance << "\n";
  for (Index i = 0; i < ps.size(); ++i) {
    for (int a = 0; a < ps.dim; ++a) {
      if (a) os << " ";
      os << format_double(ps.points(i, a));
    }
    if (ps.has_weights())
      os << " " << format_double(ps.weights(i).real()) << "," << format_double(ps.weights(i).imag());
    if (ps.has_colors()) os << " " << ps.color_names[ps.colors[i]];
    if (ps.has_module()) {
      for (Index j = 0; j < ps.module_coords.cols(); ++j) os << " " << ps.module_coords(i, j);
    }
    os << "\n";
  }
  return os.str();
}

PointSet read_pointset_string(const std::string& text) {
  PointSet ps;
  bool have_dim = false, have_r = false, have_R = false, have_window = false;
  bool have_basis = false, have_colors = false;
  Mat basis;
  std::istringstream is(text);
  std::string line;
  long lineno = 0;

  std::vector<std::vector<double>> coords;
  std::vector<Complex> weights;
  std::vector<int> colors;
  std::vector<std::vector<std::int64_t>> mods;
  bool any_weight = false, any_color = false;

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq);
      const std::string val = body.substr(eq + 1);
      if (key == "dim") {
        ps.dim = static_cast<int>(parse_num(val, lineno));
        have_dim = true;
      } else if (key == "r") {
        ps.r = parse_num(val, lineno);
        have_r = true;
      } else if (key == "R") {
        ps.R = parse_num(val, lineno);
        have_R = true;
      } else if (key == "window") {
        auto axes = split(val, ';');
        ps.window.lo.resize(static_cast<Index>(axes.size()));
        ps.window.hi.resize(static_cast<Index>(axes.size()));
        for (std::size_t a = 0; a < axes.size(); ++a) {
          auto ab = split(axes[a], ',');
          if (ab.size() != 2) fail("window axis needs 'lo,hi'", lineno);
          ps.window.lo(static_cast<Index>(a)) = parse_num(ab[0], lineno);
          ps.window.hi(static_cast<Index>(a)) = parse_num(ab[1], lineno);
        }
        have_window = true;
      } else if (key == "basis") {
        auto rows = split(val, ';');
        auto first = split(rows[0], ',');
        basis.resize(static_cast<Index>(rows.size()), static_cast<Index>(first.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
          auto cols = split(rows[i], ',');
          if (cols.size() != first.size()) fail("ragged basis", lineno);
          for (std::size_t j = 0; j < cols.size(); ++j)
            basis(static_cast<Index>(i), static_cast<Index>(j)) = parse_num(cols[j], lineno);
        }
        have_basis = true;
      } else if (key == "colors") {
        ps.color_names = split(val, ',');
        have_colors = true;
      } else if (key == "delone") {
        ps.claims_delone = parse_num(val, lineno) != 0;
      } else if (key == "provenance") {
        ps.provenance = val;
      }
      continue;
    }

    if (!have_dim) fail("missing header: # dim=", lineno);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    std::size_t pos = 0;
    std::vector<double> xy(ps.dim);
    for (int a = 0; a < ps.dim; ++a) {
      if (pos >= toks.size()) fail("row too short for coordinates", lineno);
      xy[a] = parse_num(toks[pos++], lineno);
    }
    coords.push_back(xy);

    Complex w(1.0, 0.0);
    bool saw_weight = false;
    if (pos < toks.size() && toks[pos].find(',') != std::string::npos) {
      auto parts = split(toks[pos], ',');
      if (parts.size() != 2) fail("weight token needs 're,im'", lineno);
      w = Complex(parse_num(parts[0], lineno), parse_num(parts[1], lineno));
      saw_weight = true;
      ++pos;
    }
    weights.push_back(w);
    any_weight = any_weight || saw_weight;

    int color = -1;
    if (pos < toks.size() && !is_numeric_token(toks[pos])) {
      if (!have_colors) fail("color label without # colors= header", lineno);
      auto it = std::find(ps.color_names.begin(), ps.color_names.end(), toks[pos]);
      if (it == ps.color_names.end()) fail("unknown color label '" + toks[pos] + "'", lineno);
      color = static_cast<int>(it - ps.color_names.begin());
      ++pos;
      any_color = true;
    }
    colors.push_back(color);

    std::vector<std::int64_t> m;
    if (have_basis) {
      const Index rank = basis.cols();
      if (pos + static_cast<std::size_t>(rank) > toks.size())
        fail("row too short for module coordinates", lineno);
      for (Index j = 0; j < rank; ++j)
        m.push_back(static_cast<std::int64_t>(std::llround(parse_num(toks[pos++], lineno))));
    }
    mods.push_back(m);
    if (pos != toks.size()) fail("trailing tokens", lineno);
  }

  if (!have_dim) fail("missing header: # dim=");
  if (!have_r) fail("missing header: # r=");
  if (!have_R) fail("missing header: # R=");
  if (!have_window) fail("missing header: # window=");
  if (ps.window.dim() != ps.dim) fail("window dimension mismatch");

  const Index n = static_cast<Index>(coords.size());
  ps.points.resize(n, ps.dim);
  for (Index i = 0; i < n; ++i)
    for (int a = 0; a < ps.dim; ++a) ps.points(i, a) = coords[i][a];
  if (any_weight) {
    ps.weights.resize(n);
    for (Index i = 0; i < n; ++i) ps.weights(i) = weights[i];
  }
  if (any_color) {
    for (Index i = 0; i < n; ++i)
      if (colors[i] < 0) fail("row missing color label while others have one");
    ps.colors.assign(colors.begin(), colors.end());
  }
  if (have_basis) {
    ps.module_basis = basis;
    ps.module_coords.resize(n, basis.cols());
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < basis.cols(); ++j) ps.module_coords(i, j) = mods[i][j];
  }
  return ps;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_pointset(const PointSet& ps, const std::string& path) {
  write_text_file(path, write_pointset_string(ps));
}

PointSet read_pointset(const std::string& path) {
  return read_pointset_string(read_text_file(path));
}

}  // namespace flc
