#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "parikh/numeric.hpp"

namespace parikh::detail {

/// Sum of term(i) for i < count. Indices are striped over @p workers threads;
/// the result and the exception reported (lowest worker first) do not depend
/// on the worker count.
template <typename Term>
auto parallel_sum(std::size_t count, unsigned workers, const Term& term)
{
    using Value = std::decay_t<std::invoke_result_t<const Term&, std::size_t>>;
    if (workers <= 1 || count < 2) {
        Value total = 0;
        for (std::size_t i = 0; i < count; ++i)
            total += term(i);
        return total;
    }
    if (workers > count)
        workers = static_cast<unsigned>(count);
    std::vector<Value> partial(workers, Value(0));
    std::vector<std::exception_ptr> failure(workers);
    std::vector<std::size_t> failed_at(workers, count);
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                std::size_t i = w;
                try {
                    for (; i < count; i += workers)
                        partial[w] += term(i);
                } catch (...) {
                    failure[w] = std::current_exception();
                    failed_at[w] = i;
                }
            });
        for (auto& t : pool)
            t.join();
    }
    // Report the failure with the smallest index, as a sequential run would.
    std::size_t first = count;
    std::exception_ptr error;
    for (unsigned w = 0; w < workers; ++w)
        if (failure[w] && failed_at[w] < first) {
            first = failed_at[w];
            error = failure[w];
        }
    if (error)
        std::rethrow_exception(error);
    Value total = 0;
    for (const auto& p : partial)
        total += p;
    return total;
}

} // namespace parikh::detail
