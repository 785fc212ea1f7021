#pragma once

// Internal: chunked, schedule-independent prime scan shared by the elliptic
// and multiplicative detectors. Not installed.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "depdetect/detector.hpp"
#include "depdetect/numutil.hpp"

namespace depdetect::detail {

struct ScanOutcome {
  std::optional<LocalResult> failure;  // smallest failing prime, if any
  std::vector<LocalResult> passes;     // ascending, all p < failure.p
  long tested = 0;                     // good primes up to the failure incl.
  long skipped = 0;                    // bad primes over the same range
};

// check(p) -> nullopt for a skipped (bad) prime, else a LocalResult.
// Workers fill index-addressed slots, so the ascending merge -- and with it
// the verdict, witness and statistics -- never depends on the schedule.
// Early exit happens at chunk granularity only; work beyond the first
// failure is discarded, not counted.
template <class Check>
ScanOutcome run_scan(long bound, int threads, Check&& check) {
  ScanOutcome out;
  const std::vector<unsigned long> ps =
      primes_up_to(static_cast<unsigned long>(bound));
  if (threads < 1) threads = 1;
  constexpr std::size_t kChunk = 64;

  for (std::size_t base = 0; base < ps.size() && !out.failure; base += kChunk) {
    const std::size_t len = std::min(kChunk, ps.size() - base);
    std::vector<std::optional<LocalResult>> slot(len);

    if (threads == 1) {
      for (std::size_t i = 0; i < len; ++i) {
        slot[i] = check(Int(ps[base + i]));
        if (slot[i] && !slot[i]->pass) break;  // merge stops there anyway
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::mutex emu;
      std::exception_ptr err;
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= len) return;
          try {
            slot[i] = check(Int(ps[base + i]));
          } catch (...) {
            std::lock_guard<std::mutex> g(emu);
            if (!err) err = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::thread> pool;
      const int nw = static_cast<int>(
          std::min<std::size_t>(static_cast<std::size_t>(threads), len));
      pool.reserve(nw);
      for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (err) std::rethrow_exception(err);
    }

    for (std::size_t i = 0; i < len; ++i) {
      if (!slot[i]) {
        ++out.skipped;
        continue;
      }
      ++out.tested;
      if (slot[i]->pass) {
        out.passes.push_back(std::move(*slot[i]));
      } else {
        out.failure = std::move(*slot[i]);
        break;
      }
    }
  }
  return out;
}

}  // namespace depdetect::detail
