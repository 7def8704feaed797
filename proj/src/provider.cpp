#include "rwg/provider.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "rwg/text.hpp"

#include "httplib.h"
#include "json.hpp"

namespace rwg {

namespace {

long long estimate_tokens(size_t chars) {
    return static_cast<long long>((chars + 3) / 4);
}

size_t payload_chars(const std::vector<ChatMessage>& messages) {
    size_t n = 0;
    for (const ChatMessage& m : messages) n += m.content.size();
    return n;
}

} // namespace

std::string_view role_name(Role r) {
    switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    default: return "assistant";
    }
}

void Session::append(Role role, std::string content) {
    if (role != Role::system && content.empty())
        throw Error("user/assistant message content must be non-empty");
    if (role == Role::system && !messages.empty())
        throw Error("system message only allowed first");
    if (role != Role::system) {
        Role expected = Role::user;
        if (!messages.empty() && messages.back().role != Role::system)
            expected = messages.back().role == Role::user ? Role::assistant : Role::user;
        if (role != expected)
            throw Error("session roles must alternate user/assistant");
    }
    messages.push_back({role, std::move(content)});
}

std::string send(Provider& provider, Session& session, std::string user_text,
                 double temperature) {
    std::vector<ChatMessage> outgoing = session.messages;
    outgoing.push_back({Role::user, user_text});

    RetryPolicy policy = provider.retry_policy();
    if (policy.max_attempts < 1) policy.max_attempts = 1;

    CompletionResult result;
    int attempt = 0;
    for (;;) {
        ++attempt;
        try {
            result = provider.complete(outgoing, temperature);
            break;
        } catch (const ProviderError& e) {
            if (!e.retryable()) throw;
            if (attempt >= policy.max_attempts)
                throw ProviderError(ProviderError::Kind::exhausted_retries,
                                    "gave up after " + std::to_string(attempt) +
                                        " attempts: " + e.what());
            auto delay = std::chrono::duration<double>(policy.backoff_base_s *
                                                       static_cast<double>(1 << (attempt - 1)));
            std::this_thread::sleep_for(delay);
        }
    }

    session.append(Role::user, std::move(user_text));
    // A blank backend reply is recorded as a single space so the alternation
    // invariant holds; parsing reports EmptyReply downstream.
    session.append(Role::assistant, result.text.empty() ? std::string(" ") : result.text);

    Usage delta;
    if (result.usage) {
        delta.tokens_in = result.usage->first;
        delta.tokens_out = result.usage->second;
    } else {
        delta.tokens_in = estimate_tokens(payload_chars(outgoing));
        delta.tokens_out = estimate_tokens(result.text.size());
        delta.estimated = true;
    }
    session.usage += delta;
    session.last_attempts = attempt;
    if (session.provider_id.empty()) session.provider_id = provider.id();
    return result.text;
}

Usage cost_report(const Session& session) { return session.usage; }

ScriptedProvider::ScriptedProvider(std::vector<std::string> fixture)
    : fixture_(std::move(fixture)) {}

CompletionResult ScriptedProvider::complete(const std::vector<ChatMessage>&, double) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cursor_ >= fixture_.size())
        throw ProviderError(ProviderError::Kind::exhausted_script,
                            "scripted fixture exhausted after " +
                                std::to_string(fixture_.size()) + " replies");
    return {fixture_[cursor_++], std::nullopt};
}

size_t ScriptedProvider::consumed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cursor_;
}

size_t ScriptedProvider::remaining() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return fixture_.size() - cursor_;
}

HttpChatProvider::HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {
    if (config_.max_attempts < 1) throw Error("max_attempts must be >= 1");
}

CompletionResult HttpChatProvider::complete(const std::vector<ChatMessage>& messages,
                                            double temperature) {
    // Split endpoint into origin + path for httplib.
    const std::string& url = config_.endpoint;
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ProviderError(ProviderError::Kind::transport, "endpoint has no scheme: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    nlohmann::json body{{"model", config_.model}, {"temperature", temperature},
                        {"max_tokens", config_.max_output_tokens}};
    nlohmann::json jmessages = nlohmann::json::array();
    for (const ChatMessage& m : messages)
        jmessages.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
    body["messages"] = std::move(jmessages);

    httplib::Client client(origin);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));

    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
        headers.emplace("Authorization", std::string("Bearer ") + key);
    for (const auto& [k, v] : config_.extra_headers) headers.emplace(k, v);

    httplib::Result res = client.Post(path, headers, body.dump(), "application/json");
    if (!res)
        throw ProviderError(ProviderError::Kind::transport,
                            "transport failure: " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403)
        throw ProviderError(ProviderError::Kind::auth,
                            "authentication rejected (" + std::to_string(res->status) + ")");
    if (res->status == 429)
        throw ProviderError(ProviderError::Kind::rate_limit, "rate limited (429)");
    if (res->status >= 500)
        throw ProviderError(ProviderError::Kind::transport,
                            "server error (" + std::to_string(res->status) + ")");
    if (res->status != 200)
        throw ProviderError(ProviderError::Kind::transport,
                            "unexpected status " + std::to_string(res->status) + ": " + res->body);

    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) throw MalformedResponse("backend returned invalid JSON");

    std::string content;
    if (reply.contains("choices") && reply["choices"].is_array() && !reply["choices"].empty()) {
        const nlohmann::json& choice = reply["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string())
            content = choice["message"]["content"].get<std::string>();
        else if (choice.contains("text") && choice["text"].is_string())
            content = choice["text"].get<std::string>();
    }
    if (content.empty()) throw MalformedResponse("backend reply carries no text");

    std::optional<std::pair<long long, long long>> usage;
    if (reply.contains("usage") && reply["usage"].is_object()) {
        const nlohmann::json& u = reply["usage"];
        if (u.contains("prompt_tokens") && u.contains("completion_tokens"))
            usage = {u["prompt_tokens"].get<long long>(), u["completion_tokens"].get<long long>()};
    }
    return {std::move(content), usage};
}

} // namespace rwg
