// Command-line front end over the C API.

#include "susyhydra/susyhydra.h"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUndetermined = 2, kFailed = 3 };

struct Failure {
  int code;
  std::string message;
};

void check(shy_status s) {
  if (s == SHY_OK)
    return;
  throw Failure{s == SHY_ERR_UNDETERMINED ? kUndetermined : kInvalid,
                std::string(shy_status_name(s)) + ": " + shy_last_error()};
}

template <class T, void (*Free)(T *)> struct Handle {
  T *p = nullptr;
  Handle() = default;
  Handle(const Handle &) = delete;
  Handle &operator=(const Handle &) = delete;
  ~Handle() { Free(p); }
  T **out() { return &p; }
  T *get() const { return p; }
};
using Config = Handle<shy_config, shy_config_free>;
using Grid = Handle<shy_grid, shy_grid_free>;
using State = Handle<shy_state, shy_state_free>;

struct Owned {
  char *s = nullptr;
  ~Owned() { shy_string_free(s); }
};

shy_complex parse_complex(const std::string &text, const std::string &what) {
  shy_complex z{};
  if (shy_parse_complex(text.c_str(), &z) != SHY_OK)
    throw Failure{kInvalid, what + ": " + shy_last_error()};
  return z;
}

struct RunConfig {
  int l = 1;
  std::string k = "0.1+0.5i", alpha = "1", zeta = "0";
  std::optional<double> rmin, rmax;
  std::optional<int> nodes;
  std::string output, format, config_file;
  bool allow_real_eps = false;
  int order = 1;
  std::string mode = "infer";
  std::string suite = "all";
  std::string which;
  std::optional<int> n;
  std::optional<std::string> kappa;
  std::string gen_c = "1", gen_d = "0";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string number(double v) {
  if (!std::isfinite(v))
    return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(std::ostream &os, const Table &t, const std::string &format) {
  if (format == "json") {
    os << "{\"columns\": [";
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      os << (j ? ", " : "") << '"' << t.columns[j] << '"';
    os << "], \"rows\": [";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      os << (i ? ", " : "") << '[';
      for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
        const double v = t.rows[i][j];
        os << (j ? ", " : "") << (std::isfinite(v) ? number(v) : "null");
      }
      os << ']';
    }
    os << "]}\n";
    return;
  }
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    os << (j ? "," : "") << t.columns[j];
  os << '\n';
  for (const auto &row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << number(row[j]);
    os << '\n';
  }
}

class Out {
public:
  explicit Out(const std::string &path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw Failure{kInvalid, "cannot open output '" + path + "'"};
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream())
      throw Failure{kInvalid, "write failed"};
  }

private:
  std::ofstream file_;
};

/// Key=value lines with # comments; keys already set by flags are skipped.
void apply_config_file(const std::string &path,
                       const std::map<std::string, CLI::Option *> &flags,
                       const std::map<std::string, std::function<void(const std::string &)>> &set) {
  std::ifstream in(path);
  if (!in)
    throw Failure{kInvalid, "cannot read config '" + path + "'"};
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw Failure{kInvalid, where + ": expected key=value"};
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    for (char &c : key)
      if (c == '-')
        c = '_';
    const auto it = set.find(key);
    if (it == set.end())
      throw Failure{kInvalid, where + ": unknown key '" + key + "'"};
    const auto f = flags.find(key);
    if (f != flags.end() && f->second->count() > 0)
      continue;
    try {
      it->second(value);
    } catch (const Failure &) {
      throw;
    } catch (const std::exception &) {
      throw Failure{kInvalid, where + ": bad value '" + value + "' for " + key};
    }
  }
}

int parse_int(const std::string &v) {
  std::size_t pos = 0;
  const int x = std::stoi(v, &pos);
  if (pos != v.size())
    throw std::invalid_argument(v);
  return x;
}

double parse_double(const std::string &v) {
  std::size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size())
    throw std::invalid_argument(v);
  return x;
}

bool parse_bool(const std::string &v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on")
    return true;
  if (v == "0" || v == "false" || v == "no" || v == "off")
    return false;
  throw std::invalid_argument(v);
}

void make_config(const RunConfig &rc, Config &cfg) {
  check(shy_config_create(rc.l, parse_complex(rc.k, "k"), parse_complex(rc.alpha, "alpha"),
                          parse_complex(rc.zeta, "zeta"), rc.allow_real_eps ? 1 : 0,
                          cfg.out()));
}

/// Flags win; otherwise the default grid for the highest level involved.
void make_grid(const RunConfig &rc, int n_max, Grid &grid) {
  if (rc.rmin || rc.rmax || rc.nodes)
    check(shy_grid_create(rc.rmin.value_or(1e-4), rc.rmax.value_or(40.0 * n_max),
                          rc.nodes.value_or(0), grid.out()));
  else
    check(shy_grid_default(n_max, grid.out()));
}

struct Samples {
  std::vector<double> r;
  std::vector<shy_complex> v;
};

Samples samples(const State &s) {
  Samples out;
  const std::size_t n = shy_state_size(s.get());
  out.r.resize(n);
  out.v.resize(n);
  check(shy_state_samples(s.get(), out.r.data(), out.v.data(), n));
  return out;
}

int parse_mode(const std::string &m) {
  if (m == "infer")
    return SHY_MODE_INFER;
  if (m == "origin_zero")
    return SHY_MODE_ORIGIN_ZERO;
  if (m == "infinity_zero")
    return SHY_MODE_INFINITY_ZERO;
  throw Failure{kInvalid, "mode must be infer, origin_zero or infinity_zero"};
}

std::string table_format(const RunConfig &rc) {
  const std::string f = rc.format.empty() ? "csv" : rc.format;
  if (f != "csv" && f != "json")
    throw Failure{kInvalid, "format must be csv or json"};
  return f;
}

void require_json(const RunConfig &rc, const char *cmd) {
  if (!rc.format.empty() && rc.format != "json")
    throw Failure{kInvalid, std::string(cmd) + " writes JSON only"};
}

int cmd_classify(const RunConfig &rc) {
  require_json(rc, "classify");
  Config cfg;
  make_config(rc, cfg);
  Owned json;
  const shy_status s = shy_classify_json(cfg.get(), &json.s);
  Out out(rc.output);
  if (s == SHY_ERR_UNDETERMINED) {
    std::string msg = shy_last_error();
    for (char &c : msg)
      if (c == '"' || c == '\\')
        c = '\'';
    out.stream() << "{\"case\": \"undetermined\", \"message\": \"" << msg << "\"}\n";
    out.finish();
    std::cerr << "classification undetermined: " << shy_last_error() << '\n';
    return kUndetermined;
  }
  check(s);
  out.stream() << json.s << '\n';
  out.finish();
  return kOk;
}

Table potential_table(const RunConfig &rc, int order, int mode) {
  Config cfg;
  make_config(rc, cfg);
  Grid grid;
  make_grid(rc, rc.l + 4, grid);
  Table t;
  if (order == 1) {
    State v;
    check(shy_partner_potential(cfg.get(), grid.get(), v.out()));
    const Samples s = samples(v);
    t.columns = {"r", "vre", "vim"};
    for (std::size_t i = 0; i < s.r.size(); ++i)
      t.rows.push_back({s.r[i], s.v[i].re, s.v[i].im});
  } else if (order == 2) {
    State base, vt;
    check(shy_hydrogen_potential(rc.l, grid.get(), base.out()));
    check(shy_second_potential(cfg.get(), mode, grid.get(), vt.out()));
    const Samples b = samples(base), s = samples(vt);
    t.columns = {"r", "v_base", "v_tilde"};
    for (std::size_t i = 0; i < s.r.size(); ++i)
      t.rows.push_back({s.r[i], b.v[i].re, s.v[i].re});
  } else {
    throw Failure{kInvalid, "order must be 1 or 2"};
  }
  return t;
}

Table state_table(const State &st) {
  const Samples s = samples(st);
  Table t;
  t.columns = {"r", "re", "im", "abs2"};
  for (std::size_t i = 0; i < s.r.size(); ++i)
    t.rows.push_back({s.r[i], s.v[i].re, s.v[i].im,
                      s.v[i].re * s.v[i].re + s.v[i].im * s.v[i].im});
  return t;
}

int need_n(const RunConfig &rc) {
  if (!rc.n)
    throw Failure{kInvalid, "state " + rc.which + " needs n"};
  return *rc.n;
}

int cmd_state(const RunConfig &rc) {
  Config cfg;
  State st;
  if (rc.which == "bound") {
    const int n = need_n(rc);
    Grid grid;
    make_grid(rc, n, grid);
    check(shy_bound_state(n, rc.l, grid.get(), st.out()));
  } else if (rc.which == "mapped" && rc.kappa) {
    make_config(rc, cfg);
    Grid grid;
    make_grid(rc, rc.l + 4, grid);
    check(shy_mapped_general_state(cfg.get(), parse_complex(*rc.kappa, "kappa"),
                                   parse_complex(rc.gen_c, "C"), parse_complex(rc.gen_d, "D"),
                                   grid.get(), st.out()));
  } else if (rc.which == "mapped") {
    const int n = need_n(rc);
    make_config(rc, cfg);
    Grid grid;
    make_grid(rc, n, grid);
    check(shy_mapped_state(cfg.get(), n, grid.get(), st.out()));
  } else if (rc.which == "kernel") {
    make_config(rc, cfg);
    Grid grid;
    make_grid(rc, rc.l + 4, grid);
    check(shy_kernel_state(cfg.get(), grid.get(), st.out()));
  } else if (rc.which == "second") {
    const int n = need_n(rc);
    make_config(rc, cfg);
    Grid grid;
    make_grid(rc, n, grid);
    check(shy_second_state(cfg.get(), parse_mode(rc.mode), n, grid.get(), st.out()));
  } else if (rc.which == "seed") {
    make_config(rc, cfg);
    Grid grid;
    make_grid(rc, rc.l + 4, grid);
    check(shy_seed(cfg.get(), grid.get(), st.out()));
  } else {
    throw Failure{kInvalid, "state must be bound, mapped, kernel, second or seed"};
  }
  const Table t = state_table(st);
  Out out(rc.output);
  write_table(out.stream(), t, table_format(rc));
  out.finish();
  return kOk;
}

int cmd_verify(const RunConfig &rc) {
  require_json(rc, "verify");
  Config cfg;
  make_config(rc, cfg);
  Grid grid;
  const bool custom = rc.rmin || rc.rmax || rc.nodes;
  if (custom)
    make_grid(rc, rc.l + 4, grid);
  Owned json;
  int pass = 0;
  check(shy_verify_json(rc.suite.c_str(), cfg.get(), custom ? grid.get() : nullptr,
                        &json.s, &pass));
  Out out(rc.output);
  out.stream() << json.s << '\n';
  out.finish();
  if (!pass) {
    std::cerr << "verification failed; see the reports with \"pass\": false\n";
    return kFailed;
  }
  return kOk;
}

/// The captioned parameter sets.
struct Figure {
  int l;
  const char *k, *alpha, *zeta;
};

const std::map<std::string, Figure> &figures() {
  static const std::map<std::string, Figure> f = {
      {"fig1a", {1, "0.1+0.5i", "1", "0"}},   {"fig1b", {1, "0.1+0.5i", "1", "0"}},
      {"fig2a", {1, "0.1+0.5i", "1", "0.5+0.5i"}}, {"fig2b", {1, "0.1+0.5i", "1", "0.5+0.5i"}},
      {"fig3a", {1, "0.01+1i", "1", "0"}},    {"fig3b", {0, "0.5+0.1i", "1", "0"}},
  };
  return f;
}

int cmd_figure(const std::string &name, RunConfig rc) {
  const Figure &f = figures().at(name);
  rc.l = f.l;
  rc.k = f.k;
  rc.alpha = f.alpha;
  rc.zeta = f.zeta;
  Config cfg;
  make_config(rc, cfg);
  Table t;
  if (name == "fig1a" || name == "fig2a") {
    // Dashed curve: V_{l+1} for fig1a, V_{l-1} for fig2a.
    const int lref = name == "fig1a" ? rc.l + 1 : rc.l - 1;
    Grid grid;
    make_grid(rc, rc.l + 4, grid);
    State ref, v;
    check(shy_hydrogen_potential(lref, grid.get(), ref.out()));
    check(shy_partner_potential(cfg.get(), grid.get(), v.out()));
    const Samples a = samples(ref), b = samples(v);
    t.columns = {"r", "v_ref", "v_re", "v_im"};
    for (std::size_t i = 0; i < a.r.size(); ++i)
      t.rows.push_back({a.r[i], a.v[i].re, b.v[i].re, b.v[i].im});
  } else if (name == "fig1b") {
    const int n = 3;
    Grid grid;
    make_grid(rc, n, grid);
    State psi, Psi;
    check(shy_bound_state(n, rc.l, grid.get(), psi.out()));
    check(shy_mapped_state(cfg.get(), n, grid.get(), Psi.out()));
    const Samples a = samples(psi), b = samples(Psi);
    t.columns = {"r", "abs2_bound", "abs2_mapped"};
    for (std::size_t i = 0; i < a.r.size(); ++i)
      t.rows.push_back({a.r[i], a.v[i].re * a.v[i].re + a.v[i].im * a.v[i].im,
                        b.v[i].re * b.v[i].re + b.v[i].im * b.v[i].im});
  } else if (name == "fig2b") {
    Grid grid;
    make_grid(rc, rc.l + 4, grid);
    State K;
    check(shy_kernel_state(cfg.get(), grid.get(), K.out()));
    const Samples a = samples(K);
    t.columns = {"r", "abs2_kernel"};
    for (std::size_t i = 0; i < a.r.size(); ++i)
      t.rows.push_back({a.r[i], a.v[i].re * a.v[i].re + a.v[i].im * a.v[i].im});
  } else {
    rc.order = 2;
    t = potential_table(rc, 2, SHY_MODE_ORIGIN_ZERO);
  }
  Out out(rc.output);
  write_table(out.stream(), t, table_format(rc));
  out.finish();
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Complex SUSY partners of radial hydrogen"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig rc;

  std::map<std::string, CLI::Option *> flags;
  flags["l"] = app.add_option("--l", rc.l, "angular momentum");
  flags["k"] = app.add_option("--k", rc.k, "k as a+bi; eps = -k^2");
  flags["alpha"] = app.add_option("--alpha", rc.alpha, "coefficient of M");
  flags["zeta"] = app.add_option("--zeta", rc.zeta, "coefficient of U");
  flags["rmin"] = app.add_option("--rmin", rc.rmin, "grid start");
  flags["rmax"] = app.add_option("--rmax", rc.rmax, "grid end");
  flags["nodes"] = app.add_option("--nodes", rc.nodes, "grid node count");
  flags["output"] = app.add_option("--output,-o", rc.output, "output path (default stdout)");
  flags["format"] = app.add_option("--format", rc.format, "csv or json");
  app.add_option("--config", rc.config_file, "key=value file; flags override it");
  flags["allow_real_eps"] = app.add_flag("--allow-real-eps", rc.allow_real_eps,
                                         "accept Im k = 0");

  auto *classify = app.add_subcommand("classify", "case A-E report (JSON)");
  auto *potential = app.add_subcommand("potential", "partner potential (CSV)");
  flags["order"] = potential->add_option("--order", rc.order, "1 or 2")->check(CLI::IsMember({1, 2}));
  flags["mode"] = potential->add_option("--mode", rc.mode, "infer, origin_zero or infinity_zero");
  auto *state = app.add_subcommand("state", "bound, mapped, kernel, second or seed state (CSV)");
  state->add_option("which", rc.which, "bound | mapped | kernel | second | seed")->required();
  flags["n"] = state->add_option("n", rc.n, "principal quantum number");
  flags["kappa"] = state->add_option("--kappa", rc.kappa, "mapped general solution at -kappa^2");
  flags["C"] = state->add_option("--C", rc.gen_c, "coefficient of M in the general solution");
  flags["D"] = state->add_option("--D", rc.gen_d, "coefficient of U in the general solution");
  state->add_option("--mode", rc.mode, "second-order mode");
  auto *verify = app.add_subcommand("verify", "run a verification suite (JSON)");
  flags["suite"] = verify->add_option("--suite", rc.suite,
                                      "all, factorization, intertwining, spectra, appendix");
  std::map<std::string, CLI::App *> figs;
  for (const auto &f : figures())
    figs[f.first] = app.add_subcommand(f.first, "data for " + f.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }

  try {
    if (!rc.config_file.empty()) {
      const std::map<std::string, std::function<void(const std::string &)>> set = {
          {"l", [&](const std::string &v) { rc.l = parse_int(v); }},
          {"k", [&](const std::string &v) { rc.k = v; }},
          {"alpha", [&](const std::string &v) { rc.alpha = v; }},
          {"zeta", [&](const std::string &v) { rc.zeta = v; }},
          {"rmin", [&](const std::string &v) { rc.rmin = parse_double(v); }},
          {"rmax", [&](const std::string &v) { rc.rmax = parse_double(v); }},
          {"nodes", [&](const std::string &v) { rc.nodes = parse_int(v); }},
          {"output", [&](const std::string &v) { rc.output = v; }},
          {"format", [&](const std::string &v) { rc.format = v; }},
          {"allow_real_eps", [&](const std::string &v) { rc.allow_real_eps = parse_bool(v); }},
          {"order", [&](const std::string &v) { rc.order = parse_int(v); }},
          {"mode", [&](const std::string &v) { rc.mode = v; }},
          {"suite", [&](const std::string &v) { rc.suite = v; }},
          {"n", [&](const std::string &v) { rc.n = parse_int(v); }},
          {"kappa", [&](const std::string &v) { rc.kappa = v; }},
          {"C", [&](const std::string &v) { rc.gen_c = v; }},
          {"D", [&](const std::string &v) { rc.gen_d = v; }},
      };
      apply_config_file(rc.config_file, flags, set);
    }
    if (*classify)
      return cmd_classify(rc);
    if (*potential)
      return [&] {
        const Table t = potential_table(rc, rc.order, parse_mode(rc.mode));
        Out out(rc.output);
        write_table(out.stream(), t, table_format(rc));
        out.finish();
        return int(kOk);
      }();
    if (*state)
      return cmd_state(rc);
    if (*verify)
      return cmd_verify(rc);
    for (const auto &f : figs)
      if (*f.second)
        return cmd_figure(f.first, rc);
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
