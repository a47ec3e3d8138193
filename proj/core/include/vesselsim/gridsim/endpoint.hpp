#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "vesselsim/gridsim/worker.hpp"
#include "vesselsim/gridsim/wire.hpp"

namespace vesselsim::grid {

/// One side of a coordinator/partition link.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(const Frame& frame) = 0;
  /// Blocks for the next frame. Throws Error(Timeout) or Error(Protocol).
  virtual Frame receive() = 0;
};

/// In-process link to a WorkerServer. Frames still go through the byte
/// encoding, so this exercises the same codec as the TCP transport.
class LocalEndpoint final : public Endpoint {
 public:
  LocalEndpoint();
  void send(const Frame& frame) override;
  Frame receive() override;

 private:
  WorkerServer server_;
  std::deque<std::vector<std::uint8_t>> replies_;
};

/// Length-prefixed frames over a connected TCP socket.
class TcpEndpoint final : public Endpoint {
 public:
  TcpEndpoint(int fd, std::chrono::milliseconds timeout);
  ~TcpEndpoint() override;
  TcpEndpoint(const TcpEndpoint&) = delete;
  TcpEndpoint& operator=(const TcpEndpoint&) = delete;

  /// Connects to host:port, retrying until `timeout` elapses.
  static std::unique_ptr<TcpEndpoint> connect(const std::string& host_port, std::chrono::milliseconds timeout);

  void send(const Frame& frame) override;
  Frame receive() override;

 private:
  void read_exact(std::uint8_t* dst, std::size_t n);
  int fd_;
  std::chrono::milliseconds timeout_;
};

/// Listening socket for a partition worker.
class TcpListener {
 public:
  /// Port 0 picks an ephemeral port.
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  std::unique_ptr<TcpEndpoint> accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Serves one coordinator connection until SHUTDOWN or ABORT.
void serve(Endpoint& link);

}  // namespace vesselsim::grid
