#include "parikh/options.hpp"

#include <cstdlib>
#include <string>

#include "parikh/error.hpp"
#include "parikh/numeric.hpp"

namespace parikh {

namespace {

void override_from(const char* name, std::uint64_t& slot)
{
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0')
        return;
    try {
        slot = to_u64(parse_natural(raw));
    } catch (const Error&) {
        throw InputError(std::string("environment variable ") + name + " must be a non-negative integer");
    }
}

} // namespace

EngineOptions EngineOptions::from_env()
{
    EngineOptions options;
    override_from("PARIKH_ENUM_CAP", options.enumerate_cap);
    override_from("PARIKH_DP_CAP", options.dp_lattice_cap);
    override_from("PARIKH_COST_CAP", options.parikh_cost_cap);
    override_from("PARIKH_COST_DP_CAP", options.cost_dp_cap);
    std::uint64_t workers = options.workers;
    override_from("PARIKH_WORKERS", workers);
    options.workers = workers == 0 ? 1u : static_cast<unsigned>(workers);
    return options;
}

} // namespace parikh
