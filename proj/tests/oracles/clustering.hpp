#pragma once

// Brute-force clustering: connected components of the "within radius" graph
// by repeated flooding, O(n^3), fine for a handful of points.

#include <algorithm>
#include <complex>
#include <vector>

namespace oracle {

struct Cluster {
  std::complex<double> mean;
  int multiplicity;
};

inline std::vector<Cluster> brute_force_clusters(const std::vector<std::complex<double>>& pts,
                                                 const std::vector<int>& mult, double radius) {
  const std::size_t n = pts.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (label[a] == next && label[b] < 0 && std::abs(pts[a] - pts[b]) <= radius) {
            label[b] = next;
            grew = true;
          }
    }
    ++next;
  }
  std::vector<Cluster> out;
  for (int c = 0; c < next; ++c) {
    std::complex<double> sum = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == c) {
        sum += static_cast<double>(mult[i]) * pts[i];
        m += mult[i];
      }
    out.push_back({sum / static_cast<double>(m), m});
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    return a.mean.real() < b.mean.real() || (a.mean.real() == b.mean.real() && a.mean.imag() < b.mean.imag());
  });
  return out;
}

}  // namespace oracle
