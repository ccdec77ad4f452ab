#include "flock/csv_io.hpp"

#include <cstdio>
#include <string>

#include "flock/errors.hpp"

namespace flock {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const char* what) {
  throw IoError(std::string(what) + ": " + path.string());
}

void write_all(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail(path, "cannot open for writing");
  out << body;
  out.flush();
  if (!out) io_fail(path, "write failed");
}

void append_agent_fields(std::string& line, const AgentState& agent) {
  const std::size_t m = agent.position.dim();
  for (std::size_t c = 0; c < m; ++c) {
    line += ',';
    line += format_real(agent.position[c]);
  }
  for (std::size_t c = 0; c < m; ++c) {
    line += ',';
    line += format_real(agent.velocity[c]);
  }
}

std::string agent_header(int m) {
  std::string header = "id";
  for (int c = 0; c < m; ++c) header += ",p" + std::to_string(c);
  for (int c = 0; c < m; ++c) header += ",v" + std::to_string(c);
  return header;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string snapshot_filename(double t_label) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", t_label);
  return std::string("snapshot_t") + buf + ".csv";
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsRow>& rows) {
  std::string body = "t,gamma,min_sep,mean_nbrs,min_nbrs,max_nbrs\n";
  for (const MetricsRow& row : rows) {
    body += format_real(row.t);
    body += ',';
    if (row.gamma) body += format_real(*row.gamma);
    body += ',';
    if (row.min_sep) body += format_real(*row.min_sep);
    body += ',';
    body += format_real(row.mean_nbrs);
    body += ',';
    body += std::to_string(row.min_nbrs);
    body += ',';
    body += std::to_string(row.max_nbrs);
    body += '\n';
  }
  write_all(path, body);
}

void write_snapshot_csv(const std::filesystem::path& path, const SimState& state) {
  const int m = state.agents.empty() ? 0 : static_cast<int>(state.agents[0].position.dim());
  std::string body = agent_header(m) + "\n";
  for (const AgentState& agent : state.agents) {
    std::string line = std::to_string(agent.id);
    append_agent_fields(line, agent);
    body += line;
    body += '\n';
  }
  write_all(path, body);
}

TraceWriter::TraceWriter(const std::filesystem::path& path, int dim)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) io_fail(path_, "cannot open for writing");
  out_ << "t," << agent_header(dim) << "\n";
}

void TraceWriter::add_state(const SimState& state) {
  const std::string t_field = format_real(state.time);
  for (const AgentState& agent : state.agents) {
    std::string line = t_field;
    line += ',';
    line += std::to_string(agent.id);
    append_agent_fields(line, agent);
    out_ << line << '\n';
  }
  if (!out_) io_fail(path_, "write failed");
}

void TraceWriter::finish() {
  if (finished_) return;
  finished_ = true;
  out_.flush();
  if (!out_) io_fail(path_, "write failed");
  out_.close();
}

TraceWriter::~TraceWriter() {
  try {
    finish();
  } catch (...) {
    // Destructor swallows late flush failures; call finish() to observe them.
  }
}

}  // namespace flock
