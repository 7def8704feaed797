#pragma once
// Chat-session abstraction over LLM backends. Two implementations: a generic
// HTTP chat-completion client and a deterministic scripted provider that
// replays a fixed list of replies for offline tests and trace replays.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rwg/errors.hpp"

namespace rwg {

enum class Role { system, user, assistant };

std::string_view role_name(Role r);

struct ChatMessage {
    Role role = Role::user;
    std::string content;
};

struct Usage {
    long long tokens_in = 0;
    long long tokens_out = 0;
    bool estimated = false; // set when any component was estimated

    Usage& operator+=(const Usage& other) {
        tokens_in += other.tokens_in;
        tokens_out += other.tokens_out;
        estimated = estimated || other.estimated;
        return *this;
    }
};

// One conversation. The first message, if any, is the system prompt; after it
// user and assistant messages strictly alternate. append() enforces this.
struct Session {
    std::vector<ChatMessage> messages;
    Usage usage;
    std::string provider_id;
    int last_attempts = 0; // attempts used by the most recent send

    void append(Role role, std::string content);
};

struct RetryPolicy {
    int max_attempts = 3;
    double backoff_base_s = 0.25; // doubled after each failed attempt
};

struct CompletionResult {
    std::string text;
    std::optional<std::pair<long long, long long>> usage; // backend-reported in/out
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string id() const = 0;
    virtual CompletionResult complete(const std::vector<ChatMessage>& messages,
                                      double temperature) = 0;
    virtual RetryPolicy retry_policy() const { return {}; }
};

// Appends the user message, obtains the assistant reply (retrying transient
// transport failures per the provider's policy), appends it, and updates
// usage. The session is left untouched when every attempt fails. Token usage
// falls back to ceil(chars/4) over the sent payload and the reply when the
// backend reports none; such sessions are flagged estimated.
std::string send(Provider& provider, Session& session, std::string user_text,
                 double temperature = 0.0);

Usage cost_report(const Session& session);

class ScriptedProvider : public Provider {
public:
    explicit ScriptedProvider(std::vector<std::string> fixture);

    std::string id() const override { return "scripted"; }
    CompletionResult complete(const std::vector<ChatMessage>& messages,
                              double temperature) override;

    size_t consumed() const;
    size_t remaining() const;

private:
    std::vector<std::string> fixture_;
    mutable std::mutex mutex_;
    size_t cursor_ = 0;
};

struct ProviderConfig {
    std::string endpoint = "http://localhost:8000/v1/chat/completions";
    std::string model = "gpt-4o";
    double temperature = 0.0;
    int max_output_tokens = 2048;
    double timeout_s = 120.0;
    int max_attempts = 3;
    double backoff_base_s = 0.5;
    std::string api_key_env = "RWG_API_KEY"; // env var holding the secret
    std::map<std::string, std::string> extra_headers;
};

// Generic chat-completion wire shape: POST {model, messages, temperature,
// max_tokens}, reply {choices:[{message:{content}}], usage:{...}}.
class HttpChatProvider : public Provider {
public:
    explicit HttpChatProvider(ProviderConfig config);

    std::string id() const override { return "http:" + config_.model; }
    CompletionResult complete(const std::vector<ChatMessage>& messages,
                              double temperature) override;
    RetryPolicy retry_policy() const override {
        return {config_.max_attempts, config_.backoff_base_s};
    }

    const ProviderConfig& config() const { return config_; }

private:
    ProviderConfig config_;
};

} // namespace rwg
