#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "jumpsift/jump_detect.hpp"
#include "jumpsift/mdpde.hpp"
#include "jumpsift/model.hpp"
#include "jumpsift/regress.hpp"

namespace jumpsift {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// %.17g rendering; NaN is written as "nan".
std::string format_double(double x);

/// `index,time,value,true_jump_increment`, one row per grid point t_0..t_n.
/// Row i carries the jump increment of (t_{i-1}, t_i]; row 0 carries 0.
/// The last column is omitted when the path has no ground truth.
void write_path_csv(std::ostream& out, const SamplePath& path);

/// Reads `index,time,value[,true_jump_increment]`. The mesh is taken from
/// the first time step and must be uniform.
SamplePath read_path_csv(std::istream& in);

SamplePath load_path_csv(const std::string& file);
void save_path_csv(const std::string& file, const SamplePath& path);

/// `y,z1,z2,x_prev`.
void write_design_csv(std::ostream& out, const RegressionDesign& d);

/// `index,residual,contribution,likelihood`, 1-based index.
void write_influence_csv(std::ostream& out, const InfluenceProfile& p);

/// JSON object `{n, mode, q_or_c, a_n, b_n, xi}`.
std::string threshold_json(const ThresholdSpec& t);

/// A `# `-prefixed threshold_json line, then
/// `index,time,z,abs_z,detected,jump_size_estimate` (estimate empty when not detected).
void write_detection_csv(std::ostream& out, const DetectionReport& rep);

}  // namespace jumpsift
