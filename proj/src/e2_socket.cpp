#include "oransim/e2_socket.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace oransim {

namespace {

void set_nonblocking(int fd) {
    const int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

std::optional<std::string> pop_line(std::string& buffer) {
    const auto nl = buffer.find('\n');
    if (nl == std::string::npos) return std::nullopt;
    std::string line = buffer.substr(0, nl + 1);
    buffer.erase(0, nl + 1);
    return line;
}

void write_all(int fd, const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK) {
                pollfd pfd{fd, POLLOUT, 0};
                ::poll(&pfd, 1, 1000);
                continue;
            }
            throw std::runtime_error(std::string("E2 socket write failed: ") +
                                     std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

}  // namespace

E2SocketServer::E2SocketServer(int port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("cannot create E2 socket");
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
        ::listen(listen_fd_, 1) < 0) {
        ::close(listen_fd_);
        throw std::runtime_error(std::string("cannot bind E2 socket: ") +
                                 std::strerror(errno));
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

E2SocketServer::~E2SocketServer() {
    if (client_fd_ >= 0) ::close(client_fd_);
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

bool E2SocketServer::wait_for_client(int timeout_ms) {
    if (client_fd_ >= 0) return true;
    pollfd pfd{listen_fd_, POLLIN, 0};
    if (::poll(&pfd, 1, timeout_ms) <= 0) return false;
    client_fd_ = ::accept(listen_fd_, nullptr, nullptr);
    if (client_fd_ < 0) return false;
    const int one = 1;
    ::setsockopt(client_fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    set_nonblocking(client_fd_);
    return true;
}

void E2SocketServer::to_xapp(const std::string& line) {
    if (client_fd_ < 0) return;  // no xApp attached; reports are droppable
    write_all(client_fd_, line);
}

std::optional<std::string> E2SocketServer::from_xapp() {
    if (auto line = pop_line(rx_buffer_)) return line;
    if (client_fd_ < 0) return std::nullopt;
    char buf[4096];
    for (;;) {
        const ssize_t n = ::recv(client_fd_, buf, sizeof buf, 0);
        if (n > 0) {
            rx_buffer_.append(buf, static_cast<std::size_t>(n));
            continue;
        }
        break;  // 0 = closed, <0 = would block; either way stop reading
    }
    return pop_line(rx_buffer_);
}

E2SocketClient::E2SocketClient(const std::string& host, int port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::runtime_error("cannot create E2 client socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw std::runtime_error("bad E2 host address: " + host);
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        ::close(fd_);
        throw std::runtime_error(std::string("cannot connect to E2 endpoint: ") +
                                 std::strerror(errno));
    }
    const int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

E2SocketClient::~E2SocketClient() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> E2SocketClient::read_line(int timeout_ms) {
    if (auto line = pop_line(rx_buffer_)) return line;
    while (!closed_) {
        pollfd pfd{fd_, POLLIN, 0};
        const int r = ::poll(&pfd, 1, timeout_ms);
        if (r <= 0) return std::nullopt;  // timeout
        char buf[4096];
        const ssize_t n = ::recv(fd_, buf, sizeof buf, 0);
        if (n <= 0) {
            closed_ = true;
            return std::nullopt;
        }
        rx_buffer_.append(buf, static_cast<std::size_t>(n));
        if (auto line = pop_line(rx_buffer_)) return line;
    }
    return std::nullopt;
}

void E2SocketClient::write_line(const std::string& line) { write_all(fd_, line); }

bool parse_socket_address(const std::string& addr, std::string* host, int* port) {
    const auto colon = addr.rfind(':');
    std::string port_str;
    if (colon == std::string::npos) {
        *host = "127.0.0.1";
        port_str = addr;
    } else {
        *host = colon == 0 ? "127.0.0.1" : addr.substr(0, colon);
        port_str = addr.substr(colon + 1);
    }
    try {
        *port = std::stoi(port_str);
    } catch (...) {
        return false;
    }
    return *port > 0 && *port < 65536;
}

}  // namespace oransim
