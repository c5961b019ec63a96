#ifndef MAGDTN_SPECTRUM_HPP
#define MAGDTN_SPECTRUM_HPP

#include <string>
#include <vector>

namespace magdtn {

struct SpectrumMeta {
  double b = 0.0;
  double R = 0.0;           // disk radius; 0 for general domains
  std::string method;       // "disk-interior", "disk-exterior", "schur", ...
  double tolerance = 0.0;
  int mode_window = 0;      // half-width of the angular-mode window (disk solvers)
  double h = 0.0;           // mesh size (grid solvers)
};

/// Ascending D-to-N eigenvalues. `labels` carries the angular mode for the
/// disk solvers and the eigenvalue index for grid solvers.
struct DtNSpectrum {
  std::vector<double> eigenvalues;
  std::vector<int> labels;
  SpectrumMeta meta;
};

}  // namespace magdtn

#endif  // MAGDTN_SPECTRUM_HPP
