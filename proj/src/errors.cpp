#include <qtheta/errors.hpp>

namespace qtheta
{

void rethrow_with_context(const std::string &context)
{
    try {
        throw;
    } catch (const UsageError &e) {
        throw UsageError(context + ": " + e.what());
    } catch (const NotAUnit &e) {
        throw NotAUnit(context + ": " + e.what());
    } catch (const NonEvaluable &e) {
        throw NonEvaluable(context + ": " + e.what());
    } catch (const OrderExceeded &e) {
        throw OrderExceeded(context + ": " + e.what());
    } catch (const DivergentBound &e) {
        throw DivergentBound(context + ": " + e.what());
    } catch (const UnsoundTruncation &e) {
        throw UnsoundTruncation(context + ": " + e.what());
    } catch (const Error &e) {
        throw Error(context + ": " + e.what());
    }
}

std::string error_kind(const std::exception &e)
{
    if (dynamic_cast<const NonEvaluable *>(&e)) {
        return "NonEvaluable";
    }
    if (dynamic_cast<const NotAUnit *>(&e)) {
        return "NotAUnit";
    }
    if (dynamic_cast<const OrderExceeded *>(&e)) {
        return "OrderExceeded";
    }
    if (dynamic_cast<const DivergentBound *>(&e)) {
        return "DivergentBound";
    }
    if (dynamic_cast<const UnsoundTruncation *>(&e)) {
        return "UnsoundTruncation";
    }
    if (dynamic_cast<const UsageError *>(&e)) {
        return "UsageError";
    }
    return "InternalError";
}

} // namespace qtheta
