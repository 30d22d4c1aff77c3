#include "wapprox/job.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wapprox/csv.hpp"
#include "wapprox/error.hpp"
#include "wapprox/membership.hpp"
#include "wapprox/vector_approx.hpp"

namespace wapprox {

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::classify: return "classify";
    case TaskKind::member: return "member";
    case TaskKind::approx: return "approx";
    case TaskKind::converge: return "converge";
    case TaskKind::psi: return "psi";
  }
  return "?";
}

namespace {

struct Entry {
  std::string value;
  int line;
};

/// section name ("" for top level) -> key -> entry
using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string& section, const std::string& key, int line, const std::string& what) {
  std::string where = section.empty() ? key : "[" + section + "]." + key;
  throw ValidationError((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) + where + ": " + what);
}

Sections read_sections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read job file " + path.string());
  Sections sections;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(text, "section", line, "unterminated section header");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (section != "weight" && section != "function" && section != "task")
        throw ValidationError("line " + std::to_string(line) + ": unknown section [" + section + "]");
      sections[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(line) + ": expected 'key = value' in " +
                            (section.empty() ? std::string("top level") : "[" + section + "]"));
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) fail(section, "?", line, "empty key");
    auto& keys = sections[section];
    if (keys.count(key)) fail(section, key, line, "duplicate key (first given on line " + std::to_string(keys[key].line) + ")");
    keys[key] = Entry{value, line};
  }
  if (in.bad()) throw IoError("error while reading " + path.string());
  return sections;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  for (std::string t; is >> t;) w.push_back(t);
  return w;
}

double to_number(const std::string& word, const std::string& section, const std::string& key, int line) {
  double v = 0.0;
  const char* b = word.data();
  const char* e = b + word.size();
  if (!word.empty() && *b == '+') ++b;
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc{} || r.ptr != e) fail(section, key, line, "'" + word + "' is not a number");
  return v;
}

std::vector<double> numbers(const Entry& e, const std::string& section, const std::string& key) {
  std::vector<double> out;
  for (const auto& w : words(e.value)) out.push_back(to_number(w, section, key, e.line));
  return out;
}

std::size_t to_count(const Entry& e, const std::string& section, const std::string& key) {
  std::size_t v = 0;
  const auto& s = e.value;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail(section, key, e.line, "'" + s + "' is not a count");
  return v;
}

FuncExpr expression(const Entry& e, const std::string& section, const std::string& key) {
  try {
    return parse_expr(e.value);
  } catch (const ParseError& pe) {
    fail(section, key, e.line, pe.what());
  }
}

/// Components named <prefix>0, <prefix>1, ... without gaps.
std::vector<std::pair<std::string, Entry>> indexed(const std::map<std::string, Entry>& keys, const std::string& section,
                                                   const std::string& prefix) {
  std::map<std::size_t, std::pair<std::string, Entry>> found;
  for (const auto& [key, entry] : keys) {
    if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) continue;
    const std::string idx = key.substr(prefix.size());
    if (!std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    found[std::stoul(idx)] = {key, entry};
  }
  std::vector<std::pair<std::string, Entry>> out;
  for (const auto& [j, kv] : found) {
    if (j != out.size()) fail(section, prefix + std::to_string(out.size()), kv.second.line, "missing component");
    out.push_back(kv);
  }
  return out;
}

TaskKind task_kind(const Entry& e) {
  for (TaskKind k : {TaskKind::classify, TaskKind::member, TaskKind::approx, TaskKind::converge, TaskKind::psi})
    if (e.value == to_string(k)) return k;
  fail("task", "kind", e.line, "unknown task '" + e.value + "' (expected classify, member, approx, converge or psi)");
}

}  // namespace

JobSpec load_job(const std::filesystem::path& path) {
  const Sections sections = read_sections(path);
  JobSpec job;
  job.source = path;
  const std::map<std::string, Entry> empty;
  auto section = [&](const std::string& name) -> const std::map<std::string, Entry>& {
    const auto it = sections.find(name);
    return it == sections.end() ? empty : it->second;
  };

  const auto& top = section("");
  for (const auto& [key, e] : top)
    if (key != "interval" && key != "grid") fail("", key, e.line, "unknown top-level key");
  const auto iv = top.find("interval");
  if (iv == top.end()) fail("", "interval", 0, "missing");
  {
    const auto v = numbers(iv->second, "", "interval");
    if (v.size() != 2) fail("", "interval", iv->second.line, "expected two numbers 'lo hi'");
    if (!(v[0] < v[1]) || !std::isfinite(v[0]) || !std::isfinite(v[1]))
      fail("", "interval", iv->second.line, "need finite lo < hi");
    job.interval = Interval(v[0], v[1]);
  }
  if (const auto gr = top.find("grid"); gr != top.end()) {
    const auto w = words(gr->second.value);
    if (w.empty() || w.size() > 2) fail("", "grid", gr->second.line, "expected '<n> [scheme]'");
    job.grid_n = to_count(Entry{w[0], gr->second.line}, "", "grid");
    if (*job.grid_n < 2) fail("", "grid", gr->second.line, "need at least 2 points");
    if (w.size() == 2) {
      try {
        job.grid_scheme = grid_scheme_from_string(w[1]);
      } catch (const Error&) {
        fail("", "grid", gr->second.line, "unknown scheme '" + w[1] + "'");
      }
    }
  }

  const auto& wsec = section("weight");
  for (const auto& [key, e] : indexed(wsec, "weight", "w")) job.weights.push_back(expression(e, "weight", key));
  if (job.weights.empty()) fail("weight", "w0", 0, "missing");
  std::vector<double> common;
  if (const auto p = wsec.find("points"); p != wsec.end()) common = numbers(p->second, "weight", "points");
  job.points.assign(job.weights.size(), common);
  for (const auto& [key, e] : wsec) {
    if (key == "points" || key == "tail" || key == "tail_weight") continue;
    if (key.rfind("points", 0) == 0) {
      const std::string idx = key.substr(6);
      if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail("weight", key, e.line, "unknown key");
      const std::size_t j = std::stoul(idx);
      if (j >= job.weights.size()) fail("weight", key, e.line, "no weight component w" + idx);
      for (double a : numbers(e, "weight", key)) job.points[j].push_back(a);
      continue;
    }
    if (key.rfind('w', 0) == 0 && key.size() > 1 && std::isdigit(static_cast<unsigned char>(key[1]))) continue;
    fail("weight", key, e.line, "unknown key");
  }
  for (std::size_t j = 0; j < job.points.size(); ++j) {
    for (double a : job.points[j]) {
      if (!job.interval.contains(a)) {
        const auto key = wsec.count("points" + std::to_string(j)) ? "points" + std::to_string(j) : std::string("points");
        fail("weight", key, wsec.count(key) ? wsec.at(key).line : 0,
             "declared point " + format_number(a) + " lies outside the interval");
      }
    }
    std::sort(job.points[j].begin(), job.points[j].end());
  }
  if (const auto t = wsec.find("tail"); t != wsec.end()) {
    const auto v = numbers(t->second, "weight", "tail");
    if (v.size() != 2) fail("weight", "tail", t->second.line, "expected 'C r'");
    try {
      job.tail = TailCertificate(v[0], v[1]);
    } catch (const Error& err) {
      fail("weight", "tail", t->second.line, err.what());
    }
  }
  if (const auto t = wsec.find("tail_weight"); t != wsec.end()) {
    const auto v = numbers(t->second, "weight", "tail_weight");
    if (v.size() != 1 || !(v[0] >= 0.0)) fail("weight", "tail_weight", t->second.line, "expected one nonnegative number");
    if (!job.tail) fail("weight", "tail_weight", t->second.line, "only meaningful together with tail");
    job.tail_weight = v[0];
  }

  const auto& fsec = section("function");
  for (const auto& [key, e] : indexed(fsec, "function", "f")) job.functions.push_back(expression(e, "function", key));
  for (const auto& [key, e] : fsec)
    if (!(key.size() > 1 && key[0] == 'f' && std::isdigit(static_cast<unsigned char>(key[1]))))
      fail("function", key, e.line, "unknown key");

  const auto& tsec = section("task");
  for (const auto& [key, e] : tsec)
    if (key != "kind" && key != "epsilon" && key != "max_degree" && key != "engine" && key != "out")
      fail("task", key, e.line, "unknown key");
  const auto kind = tsec.find("kind");
  if (kind == tsec.end()) fail("task", "kind", 0, "missing");
  job.kind = task_kind(kind->second);
  if (const auto e = tsec.find("epsilon"); e != tsec.end()) {
    const auto v = numbers(e->second, "task", "epsilon");
    if (v.size() != 1 || !(v[0] > 0.0) || !std::isfinite(v[0]))
      fail("task", "epsilon", e->second.line, "expected one positive number");
    job.epsilon = v[0];
  }
  if (const auto m = tsec.find("max_degree"); m != tsec.end()) job.max_degree = to_count(m->second, "task", "max_degree");
  if (const auto en = tsec.find("engine"); en != tsec.end()) {
    try {
      job.engine = engine_from_string(en->second.value);
    } catch (const Error& err) {
      fail("task", "engine", en->second.line, err.what());
    }
  }
  const auto base = path.parent_path();
  if (const auto o = tsec.find("out"); o != tsec.end()) {
    if (o->second.value.empty()) fail("task", "out", o->second.line, "empty path");
    const std::filesystem::path p(o->second.value);
    job.out = p.is_absolute() ? p : base / p;
  } else {
    job.out = base / path.stem();
  }

  const bool needs_f = job.kind != TaskKind::classify;
  if (needs_f) {
    if (job.functions.empty()) fail("function", "f0", 0, "missing (task " + to_string(job.kind) + " needs a function)");
    if (job.functions.size() != job.weights.size())
      fail("function", "f" + std::to_string(job.functions.size() - 1), fsec.begin()->second.line,
           std::to_string(job.functions.size()) + " components but the weight has " +
               std::to_string(job.weights.size()));
  }
  if ((job.kind == TaskKind::approx || job.kind == TaskKind::converge || job.kind == TaskKind::psi) && !job.epsilon)
    fail("task", "epsilon", 0, "missing (task " + to_string(job.kind) + " needs it)");
  return job;
}

Config job_config(const JobSpec& job, Config base) {
  if (job.grid_n) base.grid_n = *job.grid_n;
  if (job.grid_scheme) base.grid_scheme = *job.grid_scheme;
  return base;
}

namespace {

std::filesystem::path output_path(const JobSpec& job, const std::string& what, std::optional<std::size_t> component) {
  std::string name = job.out.filename().string() + "." + what;
  if (component) name += "." + std::to_string(*component);
  return job.out.parent_path() / (name + ".csv");
}

void write_file(const std::filesystem::path& p, const std::string& content, RunOutcome& outcome) {
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << content;
  out.close();
  if (!out) throw IoError("error while writing " + p.string());
  outcome.files.push_back(p);
}

std::vector<ScalarWeight> build_weights(const JobSpec& job, const Config& cfg) {
  std::vector<ScalarWeight> ws;
  for (std::size_t j = 0; j < job.weights.size(); ++j) {
    try {
      ws.emplace_back(job.weights[j], job.points[j], job.interval, cfg);
    } catch (Error& e) {
      e.set_component(j);
      throw;
    }
  }
  return ws;
}

VectorWeight build_vector_weight(const JobSpec& job, const Config& cfg) {
  auto ws = build_weights(job, cfg);
  if (job.tail) return VectorWeight::truncated(std::move(ws), job.tail_weight, cfg);
  return VectorWeight::finite(std::move(ws));
}

VectorFunction build_function(const JobSpec& job) {
  if (job.tail) return VectorFunction::truncated(job.functions, *job.tail);
  return VectorFunction::finite(job.functions);
}

ApproxOptions options(const JobSpec& job) {
  ApproxOptions o;
  o.engine = job.engine;
  o.max_degree = job.max_degree;
  return o;
}

std::optional<std::size_t> suffix(std::size_t j, std::size_t count) {
  return count > 1 ? std::optional<std::size_t>(j) : std::nullopt;
}

}  // namespace

RunOutcome run_job(const JobSpec& job, const Config& cfg) {
  RunOutcome outcome;
  switch (job.kind) {
    case TaskKind::classify: {
      const auto ws = build_weights(job, cfg);
      for (std::size_t j = 0; j < ws.size(); ++j) {
        const auto report = classify_weight(ws[j], cfg);
        write_file(output_path(job, "classify", suffix(j, ws.size())), csv::classification(report), outcome);
      }
      return outcome;
    }
    case TaskKind::member: {
      const auto W = build_vector_weight(job, cfg);
      const auto v = check_vector_membership(job.functions, W, cfg.tol_limit, cfg);
      write_file(output_path(job, "verdict", std::nullopt), csv::verdict(v), outcome);
      for (std::size_t j = 0; j < v.components.size(); ++j) {
        if (v.components.size() > 1) outcome.explanation += "component " + std::to_string(j) + ": ";
        outcome.explanation += explain(v.components[j]);
      }
      outcome.exit_code = v.member ? exit_codes::ok : exit_codes::not_member;
      return outcome;
    }
    case TaskKind::approx: {
      const auto W = build_vector_weight(job, cfg);
      const auto F = build_function(job);
      try {
        const auto r = approx_vector(F, W, *job.epsilon, options(job), std::nullopt, cfg);
        write_file(output_path(job, "poly", std::nullopt), csv::polynomials(r.poly.components), outcome);
        write_file(output_path(job, "cert", std::nullopt), csv::certificate(r.certificate), outcome);
        for (std::size_t j = 0; j < r.traces.size(); ++j)
          write_file(output_path(job, "trace", suffix(j, F.size())), csv::trace(r.traces[j]), outcome);
      } catch (const ComponentFailed& e) {
        write_file(output_path(job, "trace", suffix(e.index(), F.size())), csv::trace(e.trace()), outcome);
        outcome.explanation = e.what();
        outcome.exit_code = exit_codes::approximation;
      }
      return outcome;
    }
    case TaskKind::converge: {
      const auto W = build_vector_weight(job, cfg);
      const auto F = build_function(job);
      ApproxOptions o = options(job);
      o.grid = shared_grid(F, W, cfg);
      const auto budgets = allocate_budgets(*job.epsilon, F.kind, F.size());
      std::vector<std::vector<ApproxResult>> sweeps;
      for (std::size_t j = 0; j < F.size(); ++j) {
        try {
          sweeps.push_back(degree_sweep(F.components[j], W.components()[j], budgets[j], o, cfg));
        } catch (Error& e) {
          e.set_component(j);
          throw;
        }
      }
      std::vector<csv::ConvergeRow> rows;
      const auto degrees = sweep_degrees(job.max_degree);
      for (std::size_t i = 0; i < degrees.size(); ++i) {
        csv::ConvergeRow row{degrees[i], {}, 0.0};
        VectorPolynomial P;
        for (const auto& s : sweeps) {
          row.component_errors.push_back(s[i].weighted_error);
          P.components.push_back(s[i].poly);
        }
        row.total = weighted_G_residual(F, P, W, *o.grid);
        rows.push_back(std::move(row));
      }
      write_file(output_path(job, "converge", std::nullopt), csv::converge(rows), outcome);
      return outcome;
    }
    case TaskKind::psi: {
      const auto ws = build_weights(job, cfg);
      std::vector<csv::PsiRow> rows;
      for (std::size_t j = 0; j < ws.size(); ++j) {
        try {
          const auto r = divide_out_approx(job.functions[j], ws[j], *job.epsilon, options(job), cfg);
          rows.push_back({j, r.degree, r.weighted_error, r.unweighted_error});
        } catch (const MaxDegreeExceeded& e) {
          write_file(output_path(job, "psi", std::nullopt), csv::psi(rows), outcome);
          outcome.explanation = "component " + std::to_string(j) + ": " + e.what();
          outcome.exit_code = exit_codes::approximation;
          return outcome;
        } catch (Error& e) {
          e.set_component(j);
          throw;
        }
      }
      write_file(output_path(job, "psi", std::nullopt), csv::psi(rows), outcome);
      return outcome;
    }
  }
  return outcome;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return exit_codes::io;
  if (dynamic_cast<const WeightInvalid*>(&e)) return exit_codes::weight_invalid;
  if (dynamic_cast<const MaxDegreeExceeded*>(&e) || dynamic_cast<const ComponentFailed*>(&e) ||
      dynamic_cast<const CertificateInvalid*>(&e))
    return exit_codes::approximation;
  return exit_codes::validation;
}

}  // namespace wapprox
