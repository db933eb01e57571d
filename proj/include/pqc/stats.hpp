#pragma once

#include <atomic>
#include <cstdint>

namespace pqc {

struct StatsSnapshot {
    std::uint64_t full_compiles = 0;
    std::uint64_t structural_passes_run = 0;
    std::uint64_t gates_visited = 0;
    std::uint64_t rebinds_performed = 0;
    std::uint64_t emit_count = 0;

    friend bool operator==(const StatsSnapshot&, const StatsSnapshot&) = default;
};

/// Session counters. Only ever incremented; safe to bump from several
/// threads.
class CompileStats {
public:
    void count_full_compile() noexcept { full_compiles_.fetch_add(1, std::memory_order_relaxed); }
    void count_pass(std::uint64_t gates) noexcept {
        structural_passes_run_.fetch_add(1, std::memory_order_relaxed);
        gates_visited_.fetch_add(gates, std::memory_order_relaxed);
    }
    void count_rebind() noexcept { rebinds_performed_.fetch_add(1, std::memory_order_relaxed); }
    void count_emit() noexcept { emit_count_.fetch_add(1, std::memory_order_relaxed); }

    StatsSnapshot snapshot() const noexcept {
        return {full_compiles_.load(std::memory_order_relaxed), structural_passes_run_.load(std::memory_order_relaxed),
                gates_visited_.load(std::memory_order_relaxed), rebinds_performed_.load(std::memory_order_relaxed),
                emit_count_.load(std::memory_order_relaxed)};
    }

private:
    std::atomic<std::uint64_t> full_compiles_{0};
    std::atomic<std::uint64_t> structural_passes_run_{0};
    std::atomic<std::uint64_t> gates_visited_{0};
    std::atomic<std::uint64_t> rebinds_performed_{0};
    std::atomic<std::uint64_t> emit_count_{0};
};

}  // namespace pqc
