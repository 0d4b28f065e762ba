#ifndef CANONSYS_DETAIL_ORDERED_MAP_HPP
#define CANONSYS_DETAIL_ORDERED_MAP_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

namespace canon::cli {

template <typename R>
std::vector<R> ordered_map(int n, int jobs, const std::function<R(int)>& f) {
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = std::clamp(jobs, 1, std::max(n, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<R> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace canon::cli

#endif  // CANONSYS_DETAIL_ORDERED_MAP_HPP
