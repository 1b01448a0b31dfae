// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cohomo {

// Worker count; honours COHOMOLIB_THREADS when set.
unsigned thread_count() noexcept;

// Runs fn(begin, end) over contiguous blocks of [0, n). Callers write to
// per-index slots only, so results do not depend on the schedule. If several
// blocks throw, the exception of the lowest block is rethrown.
template <class F>
void parallel_blocks(std::size_t n, F&& fn, std::size_t min_block = 1)
{
    std::size_t workers = thread_count();
    if (min_block == 0) min_block = 1;
    if (workers > n / min_block) workers = n / min_block;
    if (workers <= 1) {
        if (n > 0) fn(std::size_t(0), n);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    auto run = [&](std::size_t w) {
        std::size_t b = n * w / workers, e = n * (w + 1) / workers;
        try {
            fn(b, e);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class F>
void parallel_for(std::size_t n, F&& fn, std::size_t min_block = 1)
{
    parallel_blocks(
        n,
        [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) fn(i);
        },
        min_block);
}

} // namespace cohomo
