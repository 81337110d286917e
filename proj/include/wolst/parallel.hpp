#pragma once

// Parallel map whose results are delivered in input order.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace wolst {

/// Computes work(items[i]) on `parallelism` threads and calls emit(result) on the
/// calling thread in ascending i. At most `window` results wait in the reorder
/// buffer, so memory stays bounded on long ranges. Exceptions from work are
/// rethrown on the calling thread after the workers stop.
template <class In, class Work, class Emit>
void ordered_parallel_map(const std::vector<In>& items, int parallelism, Work&& work, Emit&& emit,
                          std::size_t window = 0) {
    using Out = decltype(work(items.front()));
    if (items.empty())
        return;
    if (parallelism <= 1) {
        for (const In& item : items)
            emit(work(item));
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism), items.size());
    if (window == 0)
        window = 8 * workers;

    std::mutex mu;
    std::condition_variable ready;    // a result landed in the buffer
    std::condition_variable drained;  // the emitter advanced
    std::map<std::size_t, Out> buffer;
    std::size_t next_emit = 0;
    std::atomic<std::size_t> next_claim{0};
    std::exception_ptr failure;
    bool stop = false;

    auto run = [&] {
        while (true) {
            const std::size_t i = next_claim.fetch_add(1);
            if (i >= items.size())
                return;
            {
                std::unique_lock<std::mutex> lock(mu);
                drained.wait(lock, [&] { return stop || i < next_emit + window; });
                if (stop)
                    return;
            }
            try {
                Out out = work(items[i]);
                std::lock_guard<std::mutex> lock(mu);
                buffer.emplace(i, std::move(out));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
                drained.notify_all();
            }
            ready.notify_one();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(run);

    try {
        while (next_emit < items.size()) {
            std::unique_lock<std::mutex> lock(mu);
            ready.wait(lock, [&] { return stop || buffer.count(next_emit) != 0; });
            if (stop)
                break;
            auto node = buffer.extract(next_emit);
            ++next_emit;
            drained.notify_all();
            lock.unlock();
            emit(std::move(node.mapped()));
        }
    } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure)
            failure = std::current_exception();
        stop = true;
        drained.notify_all();
    }
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace wolst
