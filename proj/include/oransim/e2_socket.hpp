#pragma once

#include <optional>
#include <string>

#include "oransim/engine.hpp"

namespace oransim {

// gNB side of the E2 link over a loopback TCP stream. Accepts a single xApp
// connection; reads are non-blocking so the engine never stalls on the xApp.
class E2SocketServer : public E2Endpoint {
public:
    explicit E2SocketServer(int port);  // port 0 = ephemeral
    ~E2SocketServer() override;

    E2SocketServer(const E2SocketServer&) = delete;
    E2SocketServer& operator=(const E2SocketServer&) = delete;

    int port() const { return port_; }
    bool wait_for_client(int timeout_ms);

    void to_xapp(const std::string& line) override;
    std::optional<std::string> from_xapp() override;

private:
    int listen_fd_ = -1;
    int client_fd_ = -1;
    int port_ = 0;
    std::string rx_buffer_;
};

// xApp side: connects, then pumps indication lines through the rule engine
// and writes any resulting control lines back.
class E2SocketClient {
public:
    E2SocketClient(const std::string& host, int port);
    ~E2SocketClient();

    E2SocketClient(const E2SocketClient&) = delete;
    E2SocketClient& operator=(const E2SocketClient&) = delete;

    // blocks up to timeout_ms; nullopt on timeout or closed peer
    std::optional<std::string> read_line(int timeout_ms);
    void write_line(const std::string& line);
    bool closed() const { return closed_; }

private:
    int fd_ = -1;
    bool closed_ = false;
    std::string rx_buffer_;
};

// parse "host:port" (host optional, defaults to 127.0.0.1)
bool parse_socket_address(const std::string& addr, std::string* host, int* port);

}  // namespace oransim
