#include "grasscode/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grasscode/tangent_basis.hpp"

namespace grasscode {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::string bit_string(std::uint32_t label, int bits) {
  std::string s(static_cast<std::size_t>(bits), '0');
  for (int b = 0; b < bits; ++b) {
    if ((label >> (bits - 1 - b)) & 1u) s[static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

void write_complex(std::ostream& os, Complex v) {
  os << '[' << format_double(v.real()) << ", " << format_double(v.imag()) << ']';
}

struct Header {
  int T = 0;
  int M = 0;
  int L = 0;
  std::string design_case;
  std::string criterion;
  double x_star = 0.0;
  std::string basis_ordering_id;
  int D = 0;
};

void write_header(std::ostream& os, const Header& h) {
  os << "{\n  \"header\": {\n"
     << "    \"format_version\": " << kFormatVersion << ",\n"
     << "    \"T\": " << h.T << ",\n"
     << "    \"M\": " << h.M << ",\n"
     << "    \"L\": " << h.L << ",\n"
     << "    \"design_case\": \"" << h.design_case << "\",\n"
     << "    \"criterion\": \"" << h.criterion << "\",\n"
     << "    \"x_star\": " << format_double(h.x_star) << ",\n"
     << "    \"basis_ordering_id\": \"" << h.basis_ordering_id << "\",\n"
     << "    \"D\": " << h.D << "\n  }";
}

void write_labels(std::ostream& os, const std::vector<std::string>& labels) {
  os << ",\n  \"labels\": [";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << (i ? ", " : "") << '"' << labels[i] << '"';
  }
  os << ']';
}

void write_matrices(std::ostream& os, const std::vector<const CMatrix*>& mats) {
  os << ",\n  \"points\": [\n";
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const CMatrix& x = *mats[i];
    os << "    [\n";
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      os << "      [";
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (c) os << ", ";
        write_complex(os, x(r, c));
      }
      os << ']' << (r + 1 < x.rows() ? ",\n" : "\n");
    }
    os << "    ]" << (i + 1 < mats.size() ? ",\n" : "\n");
  }
  os << "  ]";
}

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(Errc::Parse, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

int int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) schema_error(where + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) schema_error(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

Complex complex_value(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) schema_error(where, "expected [re, im]");
  return {number(v[0], where + "/0"), number(v[1], where + "/1")};
}

}  // namespace

std::string write_constellation(const Constellation& c) {
  const int bits = c.bits();
  std::ostringstream os;
  write_header(os, {c.T, c.M, c.L(), std::string(to_string(c.design_case)),
                    std::string(to_string(c.criterion)), c.x_star,
                    c.design_case == DesignCase::Random ? "none" : kBasisOrderingId, c.D});

  std::vector<std::string> labels;
  for (auto l : c.labels) labels.push_back(bit_string(l, bits));
  write_labels(os, labels);

  std::vector<const CMatrix*> mats;
  for (const auto& p : c.points) mats.push_back(&p.matrix());
  write_matrices(os, mats);

  if (c.has_sparse()) {
    os << ",\n  \"sparse\": [\n";
    for (std::size_t i = 0; i < c.sparse.size(); ++i) {
      os << "    [";
      const auto& rows = c.sparse[i];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) os << ", ";
        if (rows[r].zero()) {
          os << "null";
        } else {
          os << '[' << rows[r].col << ", " << format_double(rows[r].value.real()) << ", "
             << format_double(rows[r].value.imag()) << ']';
        }
      }
      os << ']' << (i + 1 < c.sparse.size() ? ",\n" : "\n");
    }
    os << "  ]";
  }

  if (!c.origins.empty()) {
    // [basis index, negated, t, pair, complement]
    os << ",\n  \"origins\": [\n";
    for (std::size_t i = 0; i < c.origins.size(); ++i) {
      const auto& o = c.origins[i];
      os << "    [" << o.vector.index << ", " << (o.vector.negative ? 1 : 0) << ", "
         << format_double(o.t) << ", " << o.pair << ", " << (o.complement ? 1 : 0) << ']'
         << (i + 1 < c.origins.size() ? ",\n" : "\n");
    }
    os << "  ]";
  }
  os << "\n}\n";
  return os.str();
}

Constellation read_constellation(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << e.what();
    throw Error(Errc::Parse, os.str());
  }

  const json& header = field(doc, "header", "");
  const int version = int_field(header, "format_version", "/header");
  if (version != kFormatVersion) schema_error("/header/format_version", "unsupported version " + std::to_string(version));

  Constellation c;
  c.T = int_field(header, "T", "/header");
  c.M = int_field(header, "M", "/header");
  const int L = int_field(header, "L", "/header");
  if (c.M < 1 || c.T < c.M) schema_error("/header", "need 1 <= M <= T");
  if (L < 2 || !is_power_of_two(L)) schema_error("/header/L", "L must be a power of two >= 2");
  try {
    c.design_case = parse_design_case(string_field(header, "design_case", "/header"));
    c.criterion = parse_criterion(string_field(header, "criterion", "/header"));
  } catch (const Error& e) {
    schema_error("/header", e.what());
  }
  c.x_star = number(field(header, "x_star", "/header"), "/header/x_star");
  if (header.contains("D")) c.D = int_field(header, "D", "/header");

  const json& points = field(doc, "points", "");
  if (!points.is_array() || points.size() != static_cast<std::size_t>(L)) {
    schema_error("/points", "expected " + std::to_string(L) + " points (header L)");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i);
    const json& rows = points[i];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(c.T)) {
      schema_error(where, "expected " + std::to_string(c.T) + " rows");
    }
    CMatrix x(c.T, c.M);
    for (int r = 0; r < c.T; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(c.M)) {
        schema_error(where + "/" + std::to_string(r), "expected " + std::to_string(c.M) + " entries");
      }
      for (int k = 0; k < c.M; ++k) {
        x(r, k) = complex_value(row[static_cast<std::size_t>(k)],
                                where + "/" + std::to_string(r) + "/" + std::to_string(k));
      }
    }
    try {
      c.points.push_back(StiefelPoint::validate(std::move(x)));
    } catch (const Error& e) {
      schema_error(where, e.what());
    }
  }

  const int bits = bits_per_symbol(L);
  const json& labels = field(doc, "labels", "");
  if (!labels.is_array() || labels.size() != static_cast<std::size_t>(L)) {
    schema_error("/labels", "expected " + std::to_string(L) + " labels");
  }
  std::vector<bool> used(static_cast<std::size_t>(L), false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string where = "/labels/" + std::to_string(i);
    if (!labels[i].is_string()) schema_error(where, "expected a bit string");
    const auto s = labels[i].get<std::string>();
    if (static_cast<int>(s.size()) != bits || s.find_first_not_of("01") != std::string::npos) {
      schema_error(where, "expected " + std::to_string(bits) + " binary digits");
    }
    const auto value = static_cast<std::uint32_t>(std::stoul(s, nullptr, 2));
    if (used[value]) schema_error(where, "duplicate label " + s);
    used[value] = true;
    c.labels.push_back(value);
  }

  if (doc.contains("sparse")) {
    const json& sparse = doc.at("sparse");
    if (!sparse.is_array() || sparse.size() != static_cast<std::size_t>(L)) {
      schema_error("/sparse", "expected one entry per point");
    }
    for (std::size_t i = 0; i < sparse.size(); ++i) {
      const std::string where = "/sparse/" + std::to_string(i);
      const json& rows = sparse[i];
      if (!rows.is_array() || rows.size() != static_cast<std::size_t>(c.T)) {
        schema_error(where, "expected " + std::to_string(c.T) + " rows");
      }
      SparsePoint sp(static_cast<std::size_t>(c.T));
      for (int r = 0; r < c.T; ++r) {
        const json& e = rows[static_cast<std::size_t>(r)];
        if (e.is_null()) continue;
        const std::string w = where + "/" + std::to_string(r);
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer()) schema_error(w, "expected [col, re, im] or null");
        sp[static_cast<std::size_t>(r)] = {e[0].get<int>(), Complex(number(e[1], w), number(e[2], w))};
        if (sp[static_cast<std::size_t>(r)].col < 0 || sp[static_cast<std::size_t>(r)].col >= c.M) {
          schema_error(w, "column out of range");
        }
      }
      // The encoder drops entries below kSparseThreshold, so agreement is
      // checked to that tolerance rather than bit for bit.
      if ((sparse_decode(sp, c.M) - c.points[i].matrix()).cwiseAbs().maxCoeff() > kSparseThreshold) {
        schema_error(where, "sparse rows disagree with the dense point");
      }
      c.sparse.push_back(std::move(sp));
    }
  }

  if (doc.contains("origins")) {
    const json& origins = doc.at("origins");
    if (!origins.is_array() || origins.size() != static_cast<std::size_t>(L)) {
      schema_error("/origins", "expected one entry per point");
    }
    for (std::size_t i = 0; i < origins.size(); ++i) {
      const std::string w = "/origins/" + std::to_string(i);
      const json& o = origins[i];
      if (!o.is_array() || o.size() != 5) schema_error(w, "expected [index, negated, t, pair, complement]");
      PointOrigin po;
      po.vector = {o[0].get<int>(), o[1].get<int>() != 0};
      po.t = number(o[2], w);
      po.pair = o[3].get<int>();
      po.complement = o[4].get<int>() != 0;
      c.origins.push_back(po);
    }
  }
  return c;
}

void save_constellation(const Constellation& c, const std::filesystem::path& path) {
  write_text_file(path, write_constellation(c));
}

Constellation load_constellation(const std::filesystem::path& path) {
  return read_constellation(read_text_file(path));
}

std::string constellation_hash(const Constellation& c) {
  const std::string text = write_constellation(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string write_basis_dump(int M) {
  const auto basis = weyl_heisenberg_basis(M);
  std::ostringstream os;
  write_header(os, {M, M, static_cast<int>(basis.size()), "basis", "none", 0.0, kBasisOrderingId, 0});
  std::vector<std::string> labels;
  std::vector<const CMatrix*> mats;
  for (const auto& b : basis) {
    labels.push_back(b.label());
    mats.push_back(&b.tilde);
  }
  write_labels(os, labels);
  write_matrices(os, mats);
  os << "\n}\n";
  return os.str();
}

MetricsReport compute_metrics_report(const Constellation& c, int n_for_ub) {
  return {constellation_metrics(c.points, n_for_ub), c.L(), c.T, c.M};
}

std::string format_metrics_report(const MetricsReport& r) {
  const auto& m = r.metrics;
  auto pair = [](std::pair<std::size_t, std::size_t> p) {
    return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
  };
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "T=" << r.T << " M=" << r.M << " L=" << r.L << "\n";
  os << "d_g_min  " << m.d_g_min << "  at " << pair(m.argmin_d_g) << "\n";
  os << "d_c_min  " << m.d_c_min << "  at " << pair(m.argmin_d_c) << "\n";
  os << "DP_min   " << m.dp_min << "  at " << pair(m.argmin_dp) << "\n";
  os << "UB(N=" << m.n_for_ub << ") ";
  if (std::isinf(m.ub)) {
    os << "inf (some pair has DP = 0)\n";
  } else {
    os << std::setprecision(6) << std::scientific << m.ub << "\n";
  }
  return os.str();
}

std::string sweep_csv(const MappingSweep& sweep) {
  std::ostringstream os;
  os << "x,d_g,d_c,dp,ub\n";
  for (const auto& s : sweep.trace) {
    os << format_double(s.x) << ',' << format_double(s.d_g) << ',' << format_double(s.d_c) << ','
       << format_double(s.dp) << ',' << (std::isinf(s.ub) ? std::string("inf") : format_double(s.ub))
       << '\n';
  }
  return os.str();
}

std::string sim_result_csv(const SimResult& r) {
  std::ostringstream os;
  os << "snr_db,trials,sym_errors,bit_errors,ser,ber,ser_ci,ber_ci\n";
  for (const auto& p : r.points) {
    os << format_double(p.snr_db) << ',' << p.trials << ',' << p.sym_errors << ',' << p.bit_errors
       << ',' << format_double(p.ser) << ',' << format_double(p.ber) << ',' << format_double(p.ser_ci)
       << ',' << format_double(p.ber_ci) << '\n';
  }
  return os.str();
}

std::string sim_result_json(const SimResult& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"snr_db", p.snr_db},
                      {"trials", p.trials},
                      {"sym_errors", p.sym_errors},
                      {"bit_errors", p.bit_errors},
                      {"ser", p.ser},
                      {"ber", p.ber},
                      {"ser_ci", p.ser_ci},
                      {"ber_ci", p.ber_ci}});
  }
  const auto& cfg = r.config;
  json doc = {{"config",
               {{"T", r.T},
                {"M", r.M},
                {"L", r.L},
                {"N", cfg.N},
                {"snr_db", cfg.snr_db},
                {"max_trials", cfg.max_trials},
                {"min_errors", cfg.min_errors},
                {"seed", cfg.seed},
                {"detector", std::string(to_string(cfg.detector))},
                {"batch", cfg.batch}}},
              {"constellation_hash", r.constellation_hash},
              {"wall_seconds", r.wall_seconds},
              {"points", points}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

}  // namespace grasscode
