// Copyright 2026 The cred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "net.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace cred::tools {

namespace {

Error SysError(const std::string& what) {
  return MakeError(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

Status WriteAll(int fd, ByteView data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return SysError("send");
    }
    data = data.subspan(static_cast<size_t>(n));
  }
  return OkStatus();
}

Status ReadExact(int fd, std::span<uint8_t> out) {
  while (!out.empty()) {
    const ssize_t n = ::recv(fd, out.data(), out.size(), 0);
    if (n == 0) return MakeError(ErrorCode::kProtocol, "peer closed connection");
    if (n < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) {
        return MakeError(ErrorCode::kProtocol, "session timed out");
      }
      return SysError("recv");
    }
    out = out.subspan(static_cast<size_t>(n));
  }
  return OkStatus();
}

Result<addrinfo*> Resolve(const Endpoint& endpoint, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const int rc = ::getaddrinfo(endpoint.host.c_str(), endpoint.port.c_str(),
                               &hints, &result);
  if (rc != 0) {
    return MakeError(ErrorCode::kIo, endpoint.host + ":" + endpoint.port +
                                         ": " + ::gai_strerror(rc));
  }
  return result;
}

}  // namespace

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.release();
  }
  return *this;
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

Result<Endpoint> ParseEndpoint(const std::string& text) {
  const size_t colon = text.rfind(':');
  Endpoint ep;
  if (colon == std::string::npos) {
    ep.host = "127.0.0.1";
    ep.port = text;
  } else {
    ep.host = text.substr(0, colon);
    ep.port = text.substr(colon + 1);
    if (ep.host.size() >= 2 && ep.host.front() == '[' && ep.host.back() == ']') {
      ep.host = ep.host.substr(1, ep.host.size() - 2);
    }
    if (ep.host.empty()) ep.host = "127.0.0.1";
  }
  if (ep.port.empty() ||
      ep.port.find_first_not_of("0123456789") != std::string::npos) {
    return MakeError(ErrorCode::kInvalidArgument, "bad address '" + text + "'");
  }
  return ep;
}

Result<Socket> Listen(const Endpoint& endpoint) {
  CRED_ASSIGN_OR_RETURN(addrinfo * list, Resolve(endpoint, true));
  Error last = MakeError(ErrorCode::kIo, "no usable address");
  for (addrinfo* ai = list; ai != nullptr; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!s.valid()) {
      last = SysError("socket");
      continue;
    }
    const int one = 1;
    ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0 ||
        ::listen(s.fd(), 64) != 0) {
      last = SysError("bind " + endpoint.host + ":" + endpoint.port);
      continue;
    }
    ::freeaddrinfo(list);
    return s;
  }
  ::freeaddrinfo(list);
  return last;
}

Result<uint16_t> LocalPort(const Socket& socket) {
  sockaddr_storage addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(socket.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    return SysError("getsockname");
  }
  if (addr.ss_family == AF_INET6) {
    return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
  }
  return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

Result<Socket> Accept(const Socket& listener) {
  for (;;) {
    const int fd = ::accept(listener.fd(), nullptr, nullptr);
    if (fd >= 0) return Socket(fd);
    if (errno != EINTR) return SysError("accept");
  }
}

Result<Socket> Connect(const Endpoint& endpoint) {
  CRED_ASSIGN_OR_RETURN(addrinfo * list, Resolve(endpoint, false));
  Error last = MakeError(ErrorCode::kIo, "no usable address");
  for (addrinfo* ai = list; ai != nullptr; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!s.valid()) {
      last = SysError("socket");
      continue;
    }
    if (::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0) {
      last = SysError("connect " + endpoint.host + ":" + endpoint.port);
      continue;
    }
    ::freeaddrinfo(list);
    return s;
  }
  ::freeaddrinfo(list);
  return last;
}

void SetTimeout(const Socket& socket, int seconds) {
  timeval tv{};
  tv.tv_sec = seconds;
  ::setsockopt(socket.fd(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(socket.fd(), SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

Status SendMessage(const Socket& socket, const Message& message) {
  return WriteAll(socket.fd(), EncodeFrame(message));
}

Result<Message> ReceiveMessage(const Socket& socket) {
  Bytes frame(kFrameHeaderSize);
  CRED_RETURN_IF_ERROR(ReadExact(socket.fd(), frame));
  CRED_ASSIGN_OR_RETURN(FrameHeader header, ParseFrameHeader(frame));
  frame.resize(kFrameHeaderSize + header.payload_size);
  CRED_RETURN_IF_ERROR(ReadExact(
      socket.fd(), std::span<uint8_t>(frame).subspan(kFrameHeaderSize)));
  return DecodeFrame(frame);
}

}  // namespace cred::tools
