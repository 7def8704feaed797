#pragma once
// Error taxonomy shared by every module. Each named failure mode gets its own
// type so callers (and tests) can catch precisely.

#include <stdexcept>
#include <string>

namespace rwg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RWG_ERROR_TYPE(Name)                                                   \
    class Name : public Error {                                               \
    public:                                                                    \
        using Error::Error;                                                    \
    }

// graph_model
RWG_ERROR_TYPE(MissingRemoval);
RWG_ERROR_TYPE(UnknownEntity);

// llm_provider
RWG_ERROR_TYPE(MalformedResponse);

// prompts
RWG_ERROR_TYPE(UnboundSlot);
RWG_ERROR_TYPE(UnknownDataset);
RWG_ERROR_TYPE(UnsupportedVariant);

// parsing / engine
RWG_ERROR_TYPE(EmptyReply);
RWG_ERROR_TYPE(NoAnswerFound);
RWG_ERROR_TYPE(UnsupportedStrategy);

// kinship_oracle
RWG_ERROR_TYPE(UnknownPerson);
RWG_ERROR_TYPE(UnknownRelation);
RWG_ERROR_TYPE(BoundsExceeded);

// datasets
RWG_ERROR_TYPE(SchemaError);
RWG_ERROR_TYPE(IoError);
RWG_ERROR_TYPE(NotEnoughInstances);
RWG_ERROR_TYPE(NoCompletionRegistered);

// eval_harness
RWG_ERROR_TYPE(MetricMismatch);
RWG_ERROR_TYPE(IdMismatch);

// cli / serialization
RWG_ERROR_TYPE(ParseError);

#undef RWG_ERROR_TYPE

// Transport-level failures from an LLM backend. The kind distinguishes
// retryable conditions (transport, rate_limit) from terminal ones.
class ProviderError : public Error {
public:
    enum class Kind { transport, auth, rate_limit, exhausted_retries, exhausted_script };

    ProviderError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const { return kind_; }
    bool retryable() const { return kind_ == Kind::transport || kind_ == Kind::rate_limit; }

private:
    Kind kind_;
};

} // namespace rwg
