#pragma once

#include <cstdint>
#include <string>

#include "subcube/transcript.hpp"

namespace subcube {

enum class Reason {
  // rejections
  stage0_allones,
  stage0_nil_representative,
  step_1_1,
  step_1_2,
  stage2_nil,
  step_2_1,
  step_2_2,
  edge_found,  // Dolev-Ron baseline
  // acceptances
  stage1_few_ones,
  stage2_few_ones,
  stage2_no_zero,
  end_of_stage_2,
  no_positive_sample,  // general-conjunction wrapper saw no 1-sample
  no_edge,             // Dolev-Ron baseline
  budget_exhausted,
};

inline bool is_rejection(Reason r) { return r <= Reason::edge_found; }

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::stage0_allones: return "stage0-allones";
    case Reason::stage0_nil_representative: return "stage0-nil-representative";
    case Reason::step_1_1: return "step-1.1";
    case Reason::step_1_2: return "step-1.2";
    case Reason::stage2_nil: return "stage2-nil";
    case Reason::step_2_1: return "step-2.1";
    case Reason::step_2_2: return "step-2.2";
    case Reason::edge_found: return "edge-found";
    case Reason::stage1_few_ones: return "stage1-few-ones";
    case Reason::stage2_few_ones: return "stage2-few-ones";
    case Reason::stage2_no_zero: return "stage2-no-zero";
    case Reason::end_of_stage_2: return "end-of-stage-2";
    case Reason::no_positive_sample: return "no-positive-sample";
    case Reason::no_edge: return "no-edge";
    case Reason::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct Verdict {
  bool accepted = true;
  Reason reason = Reason::end_of_stage_2;
  // Transcript totals when the verdict was reached. Amplified and wrapped
  // runs share one transcript, so these are cumulative.
  std::uint64_t blackbox_queries = 0;
  std::uint64_t sample_queries = 0;
  // Stage-0 bookkeeping of the last monotone-tester run, for query accounting.
  bool stage0_completed = false;
  std::uint64_t stage0_zero_samples = 0;
  std::uint64_t stage0_distinct_zeros = 0;

  [[nodiscard]] std::string outcome() const { return accepted ? "accept" : "reject"; }
};

inline Verdict make_verdict(Reason r, const QueryTranscript& t) {
  Verdict v;
  v.accepted = !is_rejection(r);
  v.reason = r;
  v.blackbox_queries = t.blackbox_count;
  v.sample_queries = t.sample_count;
  return v;
}

}  // namespace subcube
