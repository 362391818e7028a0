#pragma once

// Line protocol between the harness and an out-of-process decoder.
//
//   client: HELLO QGEC1 <code-id> <n_syndrome> <n_output>
//   server: OK | ERR <reason>
//   client: <n_syndrome bits>     server: <n_output bits>     (repeated)
//   client: BYE                   server closes
//
// Transports: a subprocess's stdin/stdout, or a unix / tcp stream socket.

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/un.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgec/css_code.hpp"
#include "qgec/decoders.hpp"

namespace qgec::wire {

inline constexpr std::string_view kProtocol = "QGEC1";

class ProtocolError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

/// Owning file descriptor.
class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  int get() const noexcept { return fd_; }
  explicit operator bool() const noexcept { return fd_ >= 0; }
  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

/// Newline-framed text over a pair of descriptors (which may be the same
/// socket). Reads block for at most `timeout`.
class LineChannel {
 public:
  LineChannel(Fd in, Fd out, std::chrono::milliseconds timeout = std::chrono::seconds(60))
      : in_(std::move(in)), out_(std::move(out)), timeout_(timeout) {}
  /// One bidirectional descriptor (a connected socket).
  explicit LineChannel(Fd sock, std::chrono::milliseconds timeout = std::chrono::seconds(60))
      : in_(std::move(sock)), timeout_(timeout) {}
  /// Borrowed descriptors, e.g. the process's own stdin/stdout.
  static LineChannel borrow(int in_fd, int out_fd) {
    LineChannel ch{Fd(), Fd()};
    ch.borrowed_in_ = in_fd;
    ch.borrowed_out_ = out_fd;
    ch.timeout_ = std::chrono::milliseconds(-1);
    return ch;
  }

  LineChannel(LineChannel&&) noexcept = default;
  LineChannel& operator=(LineChannel&&) noexcept = default;
  virtual ~LineChannel() = default;

  void write_line(std::string_view line) {
    std::string buf(line);
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      ssize_t w = 0;
      if (is_socket_out()) {
        w = ::send(out_fd(), buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      } else {
        w = ::write(out_fd(), buf.data() + off, buf.size() - off);
      }
      if (w < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("channel write failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(w);
    }
  }

  /// Next line without its terminator; nullopt on clean end of stream.
  std::optional<std::string> read_line() {
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      if (eof_) {
        if (buffer_.empty()) return std::nullopt;
        return std::exchange(buffer_, {});
      }
      if (timeout_.count() >= 0) {
        pollfd pfd{in_fd(), POLLIN, 0};
        int rc = 0;
        do {
          rc = ::poll(&pfd, 1, static_cast<int>(timeout_.count()));
        } while (rc < 0 && errno == EINTR);
        if (rc == 0) throw ProtocolError("timed out waiting for a line from the decoder");
        if (rc < 0) throw ProtocolError(std::string("poll failed: ") + std::strerror(errno));
      }
      char chunk[4096];
      const ssize_t r = ::read(in_fd(), chunk, sizeof chunk);
      if (r < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("channel read failed: ") + std::strerror(errno));
      }
      if (r == 0) {
        eof_ = true;
      } else {
        buffer_.append(chunk, static_cast<std::size_t>(r));
      }
    }
  }

  /// Stops further writes so the peer sees end of stream.
  void close_write() {
    if (out_) {
      out_.reset();
    } else if (in_ && is_socket(in_.get())) {
      ::shutdown(in_.get(), SHUT_WR);
    }
  }

 private:
  int in_fd() const { return borrowed_in_ >= 0 ? borrowed_in_ : in_.get(); }
  int out_fd() const {
    if (borrowed_out_ >= 0) return borrowed_out_;
    return out_ ? out_.get() : in_.get();
  }
  static bool is_socket(int fd) {
    int type = 0;
    socklen_t len = sizeof type;
    return ::getsockopt(fd, SOL_SOCKET, SO_TYPE, &type, &len) == 0;
  }
  bool is_socket_out() {
    if (!socket_checked_) {
      socket_out_ = is_socket(out_fd());
      socket_checked_ = true;
    }
    return socket_out_;
  }

  Fd in_;
  Fd out_;
  int borrowed_in_ = -1;
  int borrowed_out_ = -1;
  std::chrono::milliseconds timeout_;
  std::string buffer_;
  bool eof_ = false;
  bool socket_checked_ = false;
  bool socket_out_ = false;
};

/// A child process run through /bin/sh whose stdin/stdout carry the protocol.
class Subprocess {
 public:
  explicit Subprocess(const std::string& command) {
    // Writes to a child that has exited must surface as EPIPE, not kill us.
    ::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (::pipe2(to_child, O_CLOEXEC) != 0 || ::pipe2(from_child, O_CLOEXEC) != 0) {
      throw ProtocolError(std::string("pipe failed: ") + std::strerror(errno));
    }
    pid_ = ::fork();
    if (pid_ < 0) throw ProtocolError(std::string("fork failed: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    channel_ = std::make_unique<LineChannel>(Fd(from_child[0]), Fd(to_child[1]));
  }
  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  ~Subprocess() {
    channel_.reset();
    if (pid_ > 0) wait();
  }

  LineChannel& channel() { return *channel_; }
  pid_t pid() const noexcept { return pid_; }

  /// Sends SIGTERM to the child and reaps it.
  int terminate() {
    if (pid_ > 0) ::kill(pid_, SIGTERM);
    return wait();
  }

  /// Closes our end and reaps the child; returns its exit status.
  int wait() {
    channel_.reset();
    int status = 0;
    if (pid_ > 0) {
      while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
      }
      pid_ = -1;
      exit_status_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }
    return exit_status_;
  }

 private:
  pid_t pid_ = -1;
  int exit_status_ = -1;
  std::unique_ptr<LineChannel> channel_;
};

/// Parsed socket address: `unix:<path>` or `tcp:<host>:<port>`.
struct SocketAddress {
  enum class Kind { Unix, Tcp } kind = Kind::Unix;
  std::string path;
  std::string host;
  std::string port;

  static std::optional<SocketAddress> parse(std::string_view text) {
    if (text.starts_with("unix:")) return SocketAddress{Kind::Unix, std::string(text.substr(5)), {}, {}};
    if (text.starts_with("tcp:")) {
      const auto rest = text.substr(4);
      const auto colon = rest.rfind(':');
      if (colon == std::string_view::npos) return std::nullopt;
      return SocketAddress{Kind::Tcp, {}, std::string(rest.substr(0, colon)), std::string(rest.substr(colon + 1))};
    }
    return std::nullopt;
  }
};

inline Fd connect_socket(const SocketAddress& addr) {
  if (addr.kind == SocketAddress::Kind::Unix) {
    Fd fd(::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0));
    if (!fd) throw ProtocolError(std::string("socket failed: ") + std::strerror(errno));
    sockaddr_un sa{};
    sa.sun_family = AF_UNIX;
    if (addr.path.size() >= sizeof sa.sun_path) throw ProtocolError("unix socket path too long");
    std::memcpy(sa.sun_path, addr.path.c_str(), addr.path.size() + 1);
    if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0) {
      throw ProtocolError("connect to unix:" + addr.path + " failed: " + std::strerror(errno));
    }
    return fd;
  }
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(addr.host.c_str(), addr.port.c_str(), &hints, &res); rc != 0) {
    throw ProtocolError("resolve " + addr.host + ":" + addr.port + " failed: " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(res, &::freeaddrinfo);
  for (auto* ai = res; ai != nullptr; ai = ai->ai_next) {
    Fd fd(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
    if (!fd) continue;
    if (::connect(fd.get(), ai->ai_addr, ai->ai_addrlen) == 0) return fd;
  }
  throw ProtocolError("connect to tcp:" + addr.host + ":" + addr.port + " failed");
}

/// Bound, listening socket; unix socket files are unlinked on destruction.
class Listener {
 public:
  explicit Listener(const SocketAddress& addr) : addr_(addr) {
    if (addr.kind == SocketAddress::Kind::Unix) {
      fd_ = Fd(::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0));
      sockaddr_un sa{};
      sa.sun_family = AF_UNIX;
      if (addr.path.size() >= sizeof sa.sun_path) throw ProtocolError("unix socket path too long");
      std::memcpy(sa.sun_path, addr.path.c_str(), addr.path.size() + 1);
      ::unlink(addr.path.c_str());
      if (::bind(fd_.get(), reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0) {
        throw ProtocolError("bind unix:" + addr.path + " failed: " + std::strerror(errno));
      }
    } else {
      fd_ = Fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
      int one = 1;
      ::setsockopt(fd_.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
      sockaddr_in sa{};
      sa.sin_family = AF_INET;
      sa.sin_port = htons(static_cast<std::uint16_t>(std::stoi(addr.port)));
      if (::inet_pton(AF_INET, addr.host.c_str(), &sa.sin_addr) != 1) {
        throw ProtocolError("tcp listen address must be a dotted IPv4 address");
      }
      if (::bind(fd_.get(), reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0) {
        throw ProtocolError("bind tcp:" + addr.host + ":" + addr.port + " failed: " + std::strerror(errno));
      }
    }
    if (::listen(fd_.get(), 8) != 0) throw ProtocolError(std::string("listen failed: ") + std::strerror(errno));
  }
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;
  ~Listener() {
    fd_.reset();
    if (addr_.kind == SocketAddress::Kind::Unix) ::unlink(addr_.path.c_str());
  }

  Fd accept() {
    for (;;) {
      const int c = ::accept4(fd_.get(), nullptr, nullptr, SOCK_CLOEXEC);
      if (c >= 0) return Fd(c);
      if (errno != EINTR) throw ProtocolError(std::string("accept failed: ") + std::strerror(errno));
    }
  }

 private:
  SocketAddress addr_;
  Fd fd_;
};

inline bool is_bit_string(std::string_view s) {
  return s.find_first_not_of("01") == std::string_view::npos;
}

inline std::string hello_line(std::string_view code_id, std::size_t n_syndrome, std::size_t n_output) {
  return "HELLO " + std::string(kProtocol) + " " + std::string(code_id) + " " + std::to_string(n_syndrome) + " " +
         std::to_string(n_output);
}

/// Client side. Owns its transport (subprocess or socket) and performs the
/// handshake on construction. One request in flight at a time.
class ExternalDecoder final : public Decoder {
 public:
  /// `target` is `unix:<path>`, `tcp:<host>:<port>`, or a shell command.
  ExternalDecoder(const CssCode& code, const std::string& target,
                  std::chrono::milliseconds timeout = std::chrono::seconds(60))
      : code_(&code), target_(target) {
    if (auto addr = SocketAddress::parse(target)) {
      socket_ = std::make_unique<LineChannel>(connect_socket(*addr), timeout);
      channel_ = socket_.get();
    } else {
      process_ = std::make_unique<Subprocess>(target);
      channel_ = &process_->channel();
    }
    handshake();
  }

  /// Speaks the protocol over an already-connected channel.
  ExternalDecoder(const CssCode& code, std::unique_ptr<LineChannel> channel, std::string label)
      : code_(&code), target_(std::move(label)), socket_(std::move(channel)) {
    channel_ = socket_.get();
    handshake();
  }

  ~ExternalDecoder() override {
    try {
      close();
    } catch (...) {
    }
  }

  std::string id() const override { return "external:" + target_; }
  bool concurrent() const override { return false; }

  DecoderOutcome decode(const Syndrome& s) override {
    if (channel_ == nullptr) throw ProtocolError("external decoder is closed");
    if (s.bits.size() != code_->syndrome_bits()) throw DimensionError("external_decode: syndrome length mismatch");
    channel_->write_line(s.to_string());
    const auto reply = channel_->read_line();
    if (!reply) throw ProtocolError("decoder closed the channel mid-session");
    const std::size_t n_out = 2 * code_->n();
    if (reply->size() != n_out) {
      throw ProtocolError("decoder reply has " + std::to_string(reply->size()) + " characters, expected " +
                          std::to_string(n_out));
    }
    if (!is_bit_string(*reply)) throw ProtocolError("decoder reply contains characters other than 0/1");
    return {PauliError::from_label(*reply), id()};
  }

  /// Sends BYE and releases the transport.
  void close() {
    if (channel_ == nullptr) return;
    channel_->write_line("BYE");
    channel_->close_write();
    channel_ = nullptr;
    socket_.reset();
    if (process_) {
      process_->wait();
      process_.reset();
    }
  }

 private:
  void handshake() {
    channel_->write_line(hello_line(code_->name(), code_->syndrome_bits(), 2 * code_->n()));
    const auto reply = channel_->read_line();
    if (!reply) throw ProtocolError("decoder closed the channel during handshake");
    if (*reply != "OK") throw ProtocolError("decoder refused handshake: " + *reply);
  }

  const CssCode* code_;
  std::string target_;
  std::unique_ptr<Subprocess> process_;
  std::unique_ptr<LineChannel> socket_;
  LineChannel* channel_ = nullptr;
};

/// Convenience wrapper matching the other decode entry points.
inline DecoderOutcome external_decode(ExternalDecoder& conn, const Syndrome& s) { return conn.decode(s); }

/// Runs one server session on `ch`: handshake, request/response, BYE.
/// Returns 0 after a clean BYE, 1 after a refused handshake or bad request.
inline int serve_session(LineChannel& ch, const CssCode& code, Decoder& decoder) {
  const auto hello = ch.read_line();
  if (!hello) return 1;
  std::istringstream in(*hello);
  std::string word, proto, code_id;
  std::size_t n_syn = 0, n_out = 0;
  if (!(in >> word >> proto >> code_id >> n_syn >> n_out) || word != "HELLO" || proto != kProtocol) {
    ch.write_line("ERR handshake");
    return 1;
  }
  if (code_id != code.name()) {
    ch.write_line("ERR code");
    return 1;
  }
  if (n_syn != code.syndrome_bits() || n_out != 2 * code.n()) {
    ch.write_line("ERR dims");
    return 1;
  }
  ch.write_line("OK");
  for (;;) {
    const auto line = ch.read_line();
    if (!line || *line == "BYE") return line ? 0 : 1;
    if (line->size() != n_syn || !is_bit_string(*line)) {
      ch.write_line("ERR request");
      return 1;
    }
    const auto outcome = decoder.decode(code.make_syndrome(BitVec::from_string(*line)));
    ch.write_line(outcome.correction.to_label());
  }
}

}  // namespace qgec::wire
