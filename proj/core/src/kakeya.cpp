#include "achset/kakeya.hpp"

#include <algorithm>

namespace achset {

const char* to_string(TermVerdict verdict) {
  switch (verdict) {
    case TermVerdict::LE: return "LE";
    case TermVerdict::GT: return "GT";
    case TermVerdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

const char* to_string(ResidueVerdict verdict) {
  switch (verdict) {
    case ResidueVerdict::LEAllN: return "LE-all-n";
    case ResidueVerdict::GTAllN: return "GT-all-n";
    case ResidueVerdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

KhmScanSummary khm_scan(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                        std::size_t n_max) {
  const std::size_t m = coeffs.size();
  if (n_max < m) throw std::invalid_argument("khm_scan: n_max must be at least m");

  KhmScanSummary summary;
  summary.x = x;
  summary.n_max = n_max;
  summary.residue = residue_certificate(coeffs, spec.envelope, x);
  summary.terms.reserve(n_max);

  for (std::size_t n = 1; n <= n_max; ++n) {
    TermComparison cmp;
    // Undecided escalates by doubling the truncated stretch, capped.
    for (std::size_t extra = 8 * m;; extra *= 2) {
      const std::size_t truncation = std::min(n + extra, kScanTruncationCap);
      cmp = compare_term(coeffs, spec, n, x, truncation);
      if (cmp.verdict != TermVerdict::Undecided || truncation == kScanTruncationCap) break;
    }
    switch (cmp.verdict) {
      case TermVerdict::LE: ++summary.le_count; break;
      case TermVerdict::GT:
        ++summary.gt_count;
        if (!summary.first_gt) summary.first_gt = n;
        break;
      case TermVerdict::Undecided: ++summary.undecided_count; break;
    }
    summary.terms.push_back(std::move(cmp));
  }

  // Scan pattern per cycle position: L/G if every sampled term in the class
  // agreed, M for mixed, U if any comparison stayed undecided.
  summary.pattern.assign(m, '?');
  for (std::size_t j = 1; j <= m; ++j) {
    bool saw_le = false, saw_gt = false, saw_undecided = false;
    for (std::size_t n = j; n <= n_max; n += m) {
      switch (summary.terms[n - 1].verdict) {
        case TermVerdict::LE: saw_le = true; break;
        case TermVerdict::GT: saw_gt = true; break;
        case TermVerdict::Undecided: saw_undecided = true; break;
      }
    }
    char c = 'U';
    if (!saw_undecided) c = saw_le && saw_gt ? 'M' : (saw_gt ? 'G' : 'L');
    summary.pattern[j - 1] = c;
  }

  if (summary.residue.all_le())
    summary.certified = "compact-interval";
  else if (summary.residue.all_gt())
    summary.certified = "cantor";
  else if (summary.residue.any_gt())
    summary.certified = "not-finite-union";
  else
    summary.certified = "none";
  return summary;
}

}  // namespace achset
