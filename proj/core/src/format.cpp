#include "anisoest/format.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace anisoest {

std::string sci3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  std::string s{buf};
  const auto epos = s.find('e');
  const std::string mant = s.substr(0, epos);
  const char sign = s[epos + 1];
  const int ex = std::atoi(s.c_str() + epos + 2);
  return mant + 'e' + sign + std::to_string(ex);
}

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* kReportHeader =
    "region,error,E_bubble,E_uniform,E0_bubble,E0_uniform,eff_bubble,eff_uniform,"
    "ratio_bubble,ratio_uniform,upper_eq2,upper_eq3,Y";

const char* kTableHeader =
    "table,scale,problem,param,N,M,method,iterations,rel_residual,error,"
    "hT_f_minus_fI,f_minus_fI,HT_osc_fI,HT_osc_f,E_bubble,eff_bubble,E_uniform,eff_uniform,"
    "E0_bubble,ratio_bubble,E0_uniform,ratio_uniform,upper_eq2,upper_eq3,Y";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_reports_csv(std::ostream& os, const std::vector<EstimatorReport>& reports) {
  os << kReportHeader << "\n";
  for (const auto& r : reports) {
    os << r.region << ',' << full17(r.error) << ',' << full17(r.E_bubble) << ','
       << full17(r.E_uniform) << ',' << full17(r.E0_bubble) << ',' << full17(r.E0_uniform) << ','
       << full17(r.eff_bubble) << ',' << full17(r.eff_uniform) << ',' << full17(r.ratio_bubble)
       << ',' << full17(r.ratio_uniform) << ',' << full17(r.upper_coarse) << ','
       << full17(r.upper_sharp) << ',' << full17(r.Y) << "\n";
  }
}

void write_table_csv(std::ostream& os, const TableReport& table) {
  os << kTableHeader << "\n";
  for (const auto& row : table.rows) {
    const CaseReport& c = row.rep;
    const EstimatorReport& g = c.global;
    os << table.id << ',' << (table.scale == TableScale::desk ? "desk" : "full") << ','
       << row.problem << ',' << full17(row.param) << ',' << row.N << ',' << row.M << ','
       << c.stats.method << ',' << c.stats.iterations << ',' << full17(c.stats.rel_residual)
       << ',' << full17(c.error) << ',' << full17(c.osc.hT_f_minus_fI) << ','
       << full17(c.osc.f_minus_fI) << ',' << full17(c.osc.HT_osc_fI) << ','
       << full17(c.osc.HT_osc_f) << ',' << full17(g.E_bubble) << ',' << full17(g.eff_bubble)
       << ',' << full17(g.E_uniform) << ',' << full17(g.eff_uniform) << ',' << full17(g.E0_bubble)
       << ',' << full17(g.ratio_bubble) << ',' << full17(g.E0_uniform) << ','
       << full17(g.ratio_uniform) << ',' << full17(g.upper_coarse) << ',' << full17(g.upper_sharp)
       << ',' << full17(g.Y) << "\n";
  }
}

TableReport read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTableHeader)
    throw std::invalid_argument("read_table_csv: unexpected header");
  TableReport table;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 25) throw std::invalid_argument("read_table_csv: malformed row");
    if (first) {
      table.id = std::atoi(f[0].c_str());
      table.scale = f[1] == "desk" ? TableScale::desk : TableScale::full;
      first = false;
    }
    TableRow row;
    row.problem = f[2];
    row.param = std::strtod(f[3].c_str(), nullptr);
    row.N = std::atoi(f[4].c_str());
    row.M = std::atoi(f[5].c_str());
    CaseReport& c = row.rep;
    c.problem = row.problem;
    c.param = row.param;
    c.N = row.N;
    c.M = row.M;
    c.stats.method = f[6];
    c.stats.iterations = std::atoi(f[7].c_str());
    c.stats.rel_residual = std::strtod(f[8].c_str(), nullptr);
    c.error = std::strtod(f[9].c_str(), nullptr);
    c.osc.hT_f_minus_fI = std::strtod(f[10].c_str(), nullptr);
    c.osc.f_minus_fI = std::strtod(f[11].c_str(), nullptr);
    c.osc.HT_osc_fI = std::strtod(f[12].c_str(), nullptr);
    c.osc.HT_osc_f = std::strtod(f[13].c_str(), nullptr);
    EstimatorReport& g = c.global;
    g.error = c.error;
    g.E_bubble = std::strtod(f[14].c_str(), nullptr);
    g.eff_bubble = std::strtod(f[15].c_str(), nullptr);
    g.E_uniform = std::strtod(f[16].c_str(), nullptr);
    g.eff_uniform = std::strtod(f[17].c_str(), nullptr);
    g.E0_bubble = std::strtod(f[18].c_str(), nullptr);
    g.ratio_bubble = std::strtod(f[19].c_str(), nullptr);
    g.E0_uniform = std::strtod(f[20].c_str(), nullptr);
    g.ratio_uniform = std::strtod(f[21].c_str(), nullptr);
    g.upper_coarse = std::strtod(f[22].c_str(), nullptr);
    g.upper_sharp = std::strtod(f[23].c_str(), nullptr);
    g.Y = std::strtod(f[24].c_str(), nullptr);
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string render_grid(const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return {};
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    os << '|';
    for (std::size_t c = 0; c < cells[r].size(); ++c) os << ' ' << pad(cells[r][c], width[c]) << " |";
    os << '\n';
    if (r == 0) {
      os << '|';
      for (std::size_t c = 0; c < cells[0].size(); ++c) os << ' ' << std::string(width[c], '-') << " |";
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string table_markdown(const TableReport& table) {
  std::vector<std::vector<std::string>> cells;
  if (table.id == 1) {
    cells.push_back({"M/N", "a", "N", "error", "hT(f-fI)", "E_bubble", "eff", "E_uniform", "eff"});
    for (const auto& row : table.rows) {
      const auto& g = row.rep.global;
      cells.push_back({std::to_string(row.M / row.N), std::to_string(static_cast<int>(row.param)),
                       std::to_string(row.N), sci3(row.rep.error),
                       sci3(row.rep.osc.hT_f_minus_fI), sci3(g.E_bubble), fixed2(g.eff_bubble),
                       sci3(g.E_uniform), fixed2(g.eff_uniform)});
    }
  } else if (table.id == 2) {
    cells.push_back({"eps", "N", "error", "hT(f-fI)", "E_bubble", "eff", "E_uniform", "eff"});
    for (const auto& row : table.rows) {
      const auto& g = row.rep.global;
      cells.push_back({full17(row.param), std::to_string(row.N), sci3(row.rep.error),
                       sci3(row.rep.osc.hT_f_minus_fI), sci3(g.E_bubble), fixed2(g.eff_bubble),
                       sci3(g.E_uniform), fixed2(g.eff_uniform)});
    }
  } else {
    cells.push_back({"eps", "N", "error", "E_bubble", "eff", "E0_bubble", "E0/E", "E_uniform",
                     "eff", "E0_uniform", "E0/E"});
    for (const auto& row : table.rows) {
      const auto& g = row.rep.global;
      cells.push_back({full17(row.param), std::to_string(row.N), sci3(row.rep.error),
                       sci3(g.E_bubble), fixed2(g.eff_bubble), sci3(g.E0_bubble),
                       fixed2(g.ratio_bubble), sci3(g.E_uniform), fixed2(g.eff_uniform),
                       sci3(g.E0_uniform), fixed2(g.ratio_uniform)});
    }
  }
  return render_grid(cells);
}

std::string case_markdown(const CaseReport& rep) {
  std::ostringstream os;
  os << "problem " << rep.problem << " param " << full17(rep.param) << "  N " << rep.N << "  M "
     << rep.M << "\n";
  os << "solver " << rep.stats.method << "  iterations " << rep.stats.iterations
     << "  rel_residual " << sci3(rep.stats.rel_residual) << "\n";
  os << "error " << sci3(rep.error) << "\n";
  const auto& g = rep.global;
  os << "E_bubble " << sci3(g.E_bubble) << "  eff " << fixed2(g.eff_bubble) << "  E0 "
     << sci3(g.E0_bubble) << "  E0/E " << fixed2(g.ratio_bubble) << "\n";
  os << "E_uniform " << sci3(g.E_uniform) << "  eff " << fixed2(g.eff_uniform) << "  E0 "
     << sci3(g.E0_uniform) << "  E0/E " << fixed2(g.ratio_uniform) << "\n";
  os << "upper_eq2 " << sci3(g.upper_coarse) << "  upper_eq3 " << sci3(g.upper_sharp) << "  Y "
     << sci3(g.Y) << "\n";
  os << "hT(f-fI) " << sci3(rep.osc.hT_f_minus_fI) << "  f-fI " << sci3(rep.osc.f_minus_fI)
     << "  HT_osc_fI " << sci3(rep.osc.HT_osc_fI) << "  HT_osc_f " << sci3(rep.osc.HT_osc_f)
     << "\n";
  return os.str();
}

}  // namespace anisoest
