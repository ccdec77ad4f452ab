#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "flock/metrics.hpp"
#include "flock/state.hpp"

namespace flock {

// 17 significant digits: parsing the text with strtod returns the exact
// double that was written.
std::string format_real(double x);

// "snapshot_t<label>.csv" with the label in shortest %g form.
std::string snapshot_filename(double t_label);

// Header "t,gamma,min_sep,mean_nbrs,min_nbrs,max_nbrs"; absent values become
// empty fields. Throws IoError on failure.
void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsRow>& rows);

// Header "id,p0,...,p{m-1},v0,...,v{m-1}", rows ascending by id.
void write_snapshot_csv(const std::filesystem::path& path, const SimState& state);

// Streaming trajectory writer, same column layout as snapshots plus a leading
// time column. One row per agent per sampled step.
class TraceWriter {
 public:
  TraceWriter(const std::filesystem::path& path, int dim);

  void add_state(const SimState& state);
  void finish();  // flushes and verifies the stream; also run by finish-less dtor

  ~TraceWriter();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  bool finished_ = false;
};

}  // namespace flock
