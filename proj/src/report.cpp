#include "contracta/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace contracta {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue value) {
  if (!std::holds_alternative<Object>(data_)) data_ = Object{};
  std::get<Object>(data_).emplace_back(key, std::move(value));
  return *this;
}

JsonValue& JsonValue::push(JsonValue value) {
  if (!std::holds_alternative<Array>(data_)) data_ = Array{};
  std::get<Array>(data_).push_back(std::move(value));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  auto pad = [&](int d) {
    if (indent > 0) out.append(std::size_t(indent) * d, ' ');
  };
  if (std::holds_alternative<std::nullptr_t>(data_)) {
    out += "null";
  } else if (std::holds_alternative<bool>(data_)) {
    out += std::get<bool>(data_) ? "true" : "false";
  } else if (std::holds_alternative<double>(data_)) {
    double v = std::get<double>(data_);
    out += std::isfinite(v) ? format_real(v) : std::string("null");
  } else if (std::holds_alternative<std::int64_t>(data_)) {
    out += std::to_string(std::get<std::int64_t>(data_));
  } else if (std::holds_alternative<std::string>(data_)) {
    write_escaped(out, std::get<std::string>(data_));
  } else if (std::holds_alternative<Object>(data_)) {
    const Object& obj = std::get<Object>(data_);
    if (obj.empty()) {
      out += "{}";
      return;
    }
    out += "{";
    if (indent > 0) out += "\n";
    for (std::size_t i = 0; i < obj.size(); ++i) {
      pad(depth + 1);
      write_escaped(out, obj[i].first);
      out += indent > 0 ? ": " : ":";
      obj[i].second.write(out, indent, depth + 1);
      if (i + 1 < obj.size()) out += ",";
      if (indent > 0) out += "\n";
    }
    pad(depth);
    out += "}";
  } else {
    const Array& arr = std::get<Array>(data_);
    if (arr.empty()) {
      out += "[]";
      return;
    }
    out += "[";
    if (indent > 0) out += "\n";
    for (std::size_t i = 0; i < arr.size(); ++i) {
      pad(depth + 1);
      arr[i].write(out, indent, depth + 1);
      if (i + 1 < arr.size()) out += ",";
      if (indent > 0) out += "\n";
    }
    pad(depth);
    out += "]";
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += "\n";
  return out;
}

std::string CsvTable::dump() const {
  auto quote = [](const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
  };
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += quote(header[i]);
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += quote(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string Report::render(ReportFormat format) const {
  return format == ReportFormat::json ? json.dump() : csv.dump();
}

namespace {

JsonValue report_head(const char* command, const ResolvedTarget& target,
                      const RunConfig& config) {
  JsonValue head = JsonValue::object();
  head.set("schema_version", 1);
  head.set("command", command);
  head.set("target", target.name);
  head.set("domain", target.space.domain.describe());
  head.set("distance", target.space.dist.describe());
  head.set("map", target.map.describe());
  head.set("s_claimed", target.space.s_claimed);
  JsonValue sampler = JsonValue::object();
  sampler.set("strategy",
              config.strategy == SampleStrategy::grid ? "grid" : "random");
  sampler.set("count", config.sample_count);
  sampler.set("seed", config.seed);
  head.set("sampler", std::move(sampler));
  return head;
}

JsonValue axiom_check_json(const AxiomCheck& check) {
  JsonValue v = JsonValue::object();
  v.set("pass", check.pass);
  if (!check.detail.empty()) v.set("worst", check.detail);
  return v;
}

JsonValue witness_json(const Witness& w) {
  JsonValue v = JsonValue::object();
  v.set("kind", witness_kind_name(w.kind));
  if (w.x) v.set("x", *w.x);
  if (w.y) v.set("y", *w.y);
  if (w.epsilon) v.set("epsilon", *w.epsilon);
  if (w.delta) v.set("delta", *w.delta);
  if (w.r) v.set("r", *w.r);
  if (w.d_before) v.set("d_before", *w.d_before);
  if (w.d_after) v.set("d_after", *w.d_after);
  if (w.t) v.set("t", *w.t);
  if (w.value) v.set("value", *w.value);
  if (!w.detail.empty()) v.set("detail", w.detail);
  return v;
}

JsonValue verdict_json(const ClassVerdict& verdict) {
  JsonValue v = JsonValue::object();
  v.set("class", verdict.class_name);
  v.set("status", verdict_status_name(verdict.status));
  if (verdict.witness) v.set("witness", witness_json(*verdict.witness));
  if (verdict.worst_margin && std::isfinite(*verdict.worst_margin))
    v.set("worst_margin", *verdict.worst_margin);
  if (!verdict.per_epsilon.empty()) {
    JsonValue list = JsonValue::array();
    for (const EpsilonOutcome& o : verdict.per_epsilon) {
      JsonValue e = JsonValue::object();
      e.set("epsilon", o.epsilon);
      e.set("status", verdict_status_name(o.status));
      if (o.delta) e.set("delta", *o.delta);
      if (o.r) e.set("r", *o.r);
      if (!o.note.empty()) e.set("note", o.note);
      list.push(std::move(e));
    }
    v.set("per_epsilon", std::move(list));
  }
  if (!verdict.params_used.empty()) v.set("params", verdict.params_used);
  return v;
}

std::string status_str(const FixedPointResult& r) {
  switch (r.status) {
    case FixedPointResult::Status::converged: return "converged";
    case FixedPointResult::Status::max_iter: return "max_iter";
    case FixedPointResult::Status::diverged: return "diverged";
  }
  return "unknown";
}

std::string divergence_str(const DivergenceVerdict& v) {
  return v.status == DivergenceVerdict::Status::diverging ? "diverging"
                                                          : "bounded_so_far";
}

}  // namespace

Report build_axioms_report(const ResolvedTarget& target,
                           const RunConfig& config,
                           const AxiomsResult& result) {
  Report report;
  JsonValue root = report_head("axioms", target, config);
  JsonValue axioms = JsonValue::object();
  axioms.set("self_zero", axiom_check_json(result.axioms.self_zero));
  axioms.set("positivity", axiom_check_json(result.axioms.positivity));
  axioms.set("symmetry", axiom_check_json(result.axioms.symmetry));
  if (result.axioms.triangle_checked) {
    JsonValue tri = axiom_check_json(result.axioms.triangle);
    JsonValue worst = JsonValue::array();
    worst.push(result.axioms.worst_triple.x);
    worst.push(result.axioms.worst_triple.z);
    worst.push(result.axioms.worst_triple.y);
    tri.set("worst_triple", std::move(worst));
    tri.set("worst_ratio", result.axioms.worst_ratio);
    axioms.set("triangle", std::move(tri));
  } else {
    axioms.set("triangle", "skipped");
  }
  root.set("axioms", std::move(axioms));
  root.set("all_pass", result.axioms.all_pass());
  root.set("s_estimate", result.s_estimate);
  root.set("s_estimate_triple_grid", result.triple_grid);
  report.json = std::move(root);

  report.csv.header = {"check", "pass", "detail"};
  auto row = [&](const char* name, const AxiomCheck& c) {
    report.csv.rows.push_back({name, c.pass ? "true" : "false", c.detail});
  };
  row("self_zero", result.axioms.self_zero);
  row("positivity", result.axioms.positivity);
  row("symmetry", result.axioms.symmetry);
  if (result.axioms.triangle_checked)
    row("triangle", result.axioms.triangle);
  else
    report.csv.rows.push_back({"triangle", "skipped", ""});
  report.csv.rows.push_back(
      {"s_estimate", format_real(result.s_estimate), ""});
  return report;
}

Report build_iterate_report(const ResolvedTarget& target,
                            const RunConfig& config,
                            const IterateResult& result) {
  Report report;
  JsonValue root = report_head("iterate", target, config);
  root.set("x0", result.x0);

  JsonValue fp = JsonValue::object();
  fp.set("status", status_str(result.fixed_point));
  if (result.fixed_point.point) fp.set("point", *result.fixed_point.point);
  fp.set("residual", result.fixed_point.residual);
  fp.set("iterations", result.fixed_point.iterations);
  fp.set("tol", config.tols.tol);
  root.set("fixed_point", std::move(fp));

  JsonValue orbit = JsonValue::object();
  orbit.set("length", std::uint64_t(result.orbit_prefix.points.size()));
  orbit.set("diameter", result.orbit_prefix_diameter);
  JsonValue pts = JsonValue::array();
  std::size_t shown = std::min<std::size_t>(result.orbit_prefix.points.size(),
                                            16);
  for (std::size_t i = 0; i < shown; ++i)
    pts.push(result.orbit_prefix.points[i]);
  orbit.set("head", std::move(pts));
  root.set("orbit", std::move(orbit));

  JsonValue div = JsonValue::object();
  div.set("status", divergence_str(result.divergence));
  div.set("diameter", result.divergence.last_diameter);
  div.set("orbit_length", result.divergence.orbit_length);
  div.set("capped", result.divergence.capped);
  div.set("threshold", config.divergence.threshold);
  root.set("divergence", std::move(div));
  report.json = std::move(root);

  report.csv.header = {"status", "point",      "residual", "iterations",
                       "orbit_diameter", "divergence", "divergence_diameter"};
  report.csv.rows.push_back(
      {status_str(result.fixed_point),
       result.fixed_point.point ? format_real(*result.fixed_point.point) : "",
       format_real(result.fixed_point.residual),
       std::to_string(result.fixed_point.iterations),
       format_real(result.orbit_prefix_diameter),
       divergence_str(result.divergence),
       format_real(result.divergence.last_diameter)});
  return report;
}

Report build_classify_report(const ResolvedTarget& target,
                             const RunConfig& config,
                             const HierarchyPlacement& placement) {
  Report report;
  JsonValue root = report_head("classify", target, config);
  JsonValue verdicts = JsonValue::array();
  for (const ClassVerdict& v : placement.verdicts)
    verdicts.push(verdict_json(v));
  root.set("verdicts", std::move(verdicts));
  JsonValue faults = JsonValue::array();
  for (const std::string& f : placement.consistency_faults) faults.push(f);
  root.set("consistency_faults", std::move(faults));
  JsonValue orbit = JsonValue::object();
  orbit.set("status", divergence_str(placement.orbit));
  orbit.set("diameter", placement.orbit.last_diameter);
  orbit.set("orbit_length", placement.orbit.orbit_length);
  orbit.set("capped", placement.orbit.capped);
  root.set("orbit", std::move(orbit));
  root.set("orbit_unbounded", placement.orbit_unbounded);
  report.json = std::move(root);

  report.csv.header = {"class", "status", "witness_kind", "witness_x",
                       "witness_y", "d_before", "d_after", "detail"};
  for (const ClassVerdict& v : placement.verdicts) {
    std::vector<std::string> row(8);
    row[0] = v.class_name;
    row[1] = verdict_status_name(v.status);
    if (v.witness) {
      row[2] = witness_kind_name(v.witness->kind);
      if (v.witness->x) row[3] = format_real(*v.witness->x);
      if (v.witness->y) row[4] = format_real(*v.witness->y);
      if (v.witness->d_before) row[5] = format_real(*v.witness->d_before);
      if (v.witness->d_after) row[6] = format_real(*v.witness->d_after);
      row[7] = v.witness->detail;
    }
    report.csv.rows.push_back(std::move(row));
  }
  return report;
}

Report build_probe_report(const ResolvedTarget& target,
                          const RunConfig& config, const SigmaReport& sigma) {
  Report report;
  JsonValue root = report_head("probe", target, config);
  // Finite truncation: sigma_p rows bound the family infimum from above,
  // theta_p rows bound the supremum from below.
  root.set("bias",
           "sigma_p approximates inf from above; theta_p approximates sup "
           "from below");
  root.set("truncation", sigma.truncation);
  JsonValue members = JsonValue::array();
  for (const IndexMember& m : sigma.members) {
    JsonValue mj = JsonValue::object();
    mj.set("offset", m.offset);
    mj.set("gap", m.gap);
    members.push(std::move(mj));
  }
  root.set("members", std::move(members));
  JsonValue sig = JsonValue::array();
  for (double v : sigma.sigma_p) sig.push(v);
  root.set("sigma_p", std::move(sig));
  JsonValue the = JsonValue::array();
  for (double v : sigma.theta_p) the.push(v);
  root.set("theta_p", std::move(the));
  JsonValue flags = JsonValue::object();
  flags.set("sigma_p_monotone", sigma.sigma_p_monotone);
  flags.set("theta_p_monotone", sigma.theta_p_monotone);
  flags.set("per_member_monotone", sigma.per_member_monotone);
  flags.set("squeeze_holds", sigma.squeeze_holds);
  root.set("flags", std::move(flags));
  root.set("sigma_last", sigma.sigma_last);
  root.set("theta_last", sigma.theta_last);
  report.json = std::move(root);

  report.csv.header = {"p",
                       "sigma_p",
                       "theta_p",
                       "sigma_p_monotone",
                       "theta_p_monotone",
                       "squeeze_holds"};
  for (std::size_t p = 0; p < sigma.sigma_p.size(); ++p)
    report.csv.rows.push_back({std::to_string(p),
                               format_real(sigma.sigma_p[p]),
                               format_real(sigma.theta_p[p]),
                               sigma.sigma_p_monotone ? "true" : "false",
                               sigma.theta_p_monotone ? "true" : "false",
                               sigma.squeeze_holds ? "true" : "false"});
  return report;
}

Report build_corpus_report(const std::vector<InstanceDescriptor>& instances) {
  Report report;
  JsonValue root = JsonValue::object();
  root.set("schema_version", 1);
  root.set("command", "corpus");
  JsonValue list = JsonValue::array();
  for (const InstanceDescriptor& inst : instances) {
    JsonValue e = JsonValue::object();
    e.set("name", inst.name);
    e.set("domain", inst.space.domain.describe());
    e.set("distance", inst.space.dist.describe());
    e.set("map", inst.map.describe());
    e.set("s_claimed", inst.space.s_claimed);
    JsonValue expected = JsonValue::object();
    for (const auto& [cls, status] : inst.expected)
      expected.set(cls, verdict_status_name(status));
    e.set("expected", std::move(expected));
    e.set("notes", inst.notes);
    list.push(std::move(e));
  }
  root.set("instances", std::move(list));
  report.json = std::move(root);

  report.csv.header = {"name", "domain", "distance", "map", "s_claimed",
                       "notes"};
  for (const InstanceDescriptor& inst : instances)
    report.csv.rows.push_back({inst.name, inst.space.domain.describe(),
                               inst.space.dist.describe(),
                               inst.map.describe(),
                               format_real(inst.space.s_claimed), inst.notes});
  return report;
}

void emit_report(const Report& report, ReportFormat format,
                 const std::string& path) {
  std::string rendered = report.render(format);
  if (path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << rendered;
  if (!out) throw IoError("failed writing report to '" + path + "'");
}

}  // namespace contracta
