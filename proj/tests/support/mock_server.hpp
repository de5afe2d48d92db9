#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <thread>

#include "toksig/internal/httplib_config.hpp"

namespace toksig::test {

/// In-process OpenAI-compatible endpoint for tests. The handler receives
/// every POST to /v1/completions and /v1/chat/completions.
class MockServer {
  public:
    using Handler =
        std::function<void(const httplib::Request&, httplib::Response&)>;

    explicit MockServer(Handler handler) : handler_(std::move(handler)) {
        server_.Post("/v1/completions",
                     [this](const httplib::Request& req, httplib::Response& res) {
                         ++requests_;
                         handler_(req, res);
                     });
        server_.Post("/v1/chat/completions",
                     [this](const httplib::Request& req, httplib::Response& res) {
                         ++requests_;
                         handler_(req, res);
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockServer() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    std::string base_url() const {
        return "http://127.0.0.1:" + std::to_string(port_);
    }

    int requests() const { return requests_.load(); }

  private:
    Handler handler_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
};

}  // namespace toksig::test
