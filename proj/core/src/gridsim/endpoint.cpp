#include "vesselsim/gridsim/endpoint.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "vesselsim/core/error.hpp"

namespace vesselsim::grid {

LocalEndpoint::LocalEndpoint() = default;

void LocalEndpoint::send(const Frame& frame) {
  const auto request = decode_frame(encode_frame(frame));
  replies_.push_back(encode_frame(server_.handle(request)));
}

Frame LocalEndpoint::receive() {
  if (replies_.empty()) fail(ErrorKind::Protocol, "receive without a pending reply");
  auto bytes = std::move(replies_.front());
  replies_.pop_front();
  return decode_frame(bytes);
}

namespace {

[[noreturn]] void sys_fail(ErrorKind kind, const std::string& what) {
  fail(kind, what + ": " + std::strerror(errno));
}

std::pair<std::string, std::string> split_host_port(const std::string& host_port) {
  const auto colon = host_port.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == host_port.size()) {
    fail(ErrorKind::InvalidParameter, "endpoint must look like host:port, got '" + host_port + "'");
  }
  return {host_port.substr(0, colon), host_port.substr(colon + 1)};
}

addrinfo* resolve(const std::string& host, const std::string& port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  if (const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    fail(ErrorKind::Io, "cannot resolve " + host + ":" + port + ": " + ::gai_strerror(rc));
  }
  return res;
}

bool wait_for(int fd, short events, std::chrono::milliseconds timeout) {
  pollfd p{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0) sys_fail(ErrorKind::Io, "poll");
    return rc > 0;
  }
}

}  // namespace

TcpEndpoint::TcpEndpoint(int fd, std::chrono::milliseconds timeout) : fd_(fd), timeout_(timeout) {
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpEndpoint::~TcpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpEndpoint> TcpEndpoint::connect(const std::string& host_port, std::chrono::milliseconds timeout) {
  const auto [host, port] = split_host_port(host_port);
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    addrinfo* res = resolve(host, port, false);
    for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
      const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
        ::freeaddrinfo(res);
        return std::make_unique<TcpEndpoint>(fd, timeout);
      }
      ::close(fd);
    }
    ::freeaddrinfo(res);
    if (std::chrono::steady_clock::now() >= deadline) {
      fail(ErrorKind::Timeout, "could not connect to partition worker at " + host_port);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

void TcpEndpoint::send(const Frame& frame) {
  const auto bytes = encode_frame(frame);
  std::size_t off = 0;
  while (off < bytes.size()) {
    const auto n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) sys_fail(ErrorKind::Io, "send");
    off += static_cast<std::size_t>(n);
  }
}

void TcpEndpoint::read_exact(std::uint8_t* dst, std::size_t n) {
  std::size_t off = 0;
  while (off < n) {
    if (!wait_for(fd_, POLLIN, timeout_)) fail(ErrorKind::Timeout, "partition link timed out");
    const auto got = ::recv(fd_, dst + off, n - off, 0);
    if (got < 0 && errno == EINTR) continue;
    if (got < 0) sys_fail(ErrorKind::Io, "recv");
    if (got == 0) fail(ErrorKind::Protocol, "partition link closed");
    off += static_cast<std::size_t>(got);
  }
}

Frame TcpEndpoint::receive() {
  std::vector<std::uint8_t> bytes(4);
  read_exact(bytes.data(), 4);
  const std::uint32_t len = bytes[0] | (bytes[1] << 8) | (bytes[2] << 16) | (std::uint32_t{bytes[3]} << 24);
  if (len == 0 || len > kMaxFrameBytes) fail(ErrorKind::Protocol, "bad frame length");
  bytes.resize(4 + std::size_t{len});
  read_exact(bytes.data() + 4, len);
  return decode_frame(bytes);
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, std::to_string(port), true);
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 8) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) sys_fail(ErrorKind::Io, "cannot listen on " + host + ":" + std::to_string(port));
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = addr.ss_family == AF_INET6 ? ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port)
                                     : ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpEndpoint> TcpListener::accept(std::chrono::milliseconds timeout) {
  if (!wait_for(fd_, POLLIN, timeout)) fail(ErrorKind::Timeout, "no coordinator connected");
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) sys_fail(ErrorKind::Io, "accept");
  return std::make_unique<TcpEndpoint>(fd, timeout);
}

void serve(Endpoint& link) {
  WorkerServer server;
  while (!server.finished()) link.send(server.handle(link.receive()));
}

}  // namespace vesselsim::grid
