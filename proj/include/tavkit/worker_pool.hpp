#pragma once

#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace tavkit {

inline unsigned default_worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, count) on a pool of workers and hands each result
// to consume(i, result) on the calling thread, strictly in index order, as
// soon as it is available. fn must be safe to call concurrently; consume
// never is. Exceptions thrown by fn are re-thrown on the calling thread.
template <typename Fn, typename Consume>
void parallel_for_ordered(std::size_t count, unsigned workers, Fn&& fn,
                          Consume&& consume) {
    using Result = decltype(fn(std::size_t{0}));

    if (count == 0)
        return;
    if (workers > count)
        workers = static_cast<unsigned>(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            consume(i, fn(i));
        return;
    }

    std::vector<std::optional<Result>> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::vector<char> done(count, 0);
    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::condition_variable ready;

    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            std::optional<Result> r;
            std::exception_ptr err;
            try {
                r.emplace(fn(i));
            } catch (...) {
                err = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mutex);
                results[i] = std::move(r);
                errors[i] = err;
                done[i] = 1;
            }
            ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);

    std::exception_ptr first_error;
    for (std::size_t i = 0; i < count && !first_error; ++i) {
        std::unique_lock<std::mutex> lock(mutex);
        ready.wait(lock, [&] { return done[i] != 0; });
        if (errors[i]) {
            first_error = errors[i];
            next.store(count); // stop handing out work
        } else {
            Result r = std::move(*results[i]);
            results[i].reset();
            lock.unlock();
            consume(i, std::move(r));
        }
    }
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace tavkit
