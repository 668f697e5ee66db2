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

#pragma once

#include <string>

#include "cred/protocol.h"
#include "cred/status.h"

namespace cred::tools {

// Owns a socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }

 private:
  int fd_ = -1;
};

struct Endpoint {
  std::string host;
  std::string port;
};

// Splits "host:port"; a bare port binds or connects to 127.0.0.1.
Result<Endpoint> ParseEndpoint(const std::string& text);

Result<Socket> Listen(const Endpoint& endpoint);
Result<uint16_t> LocalPort(const Socket& socket);
Result<Socket> Accept(const Socket& listener);
Result<Socket> Connect(const Endpoint& endpoint);

// Applies a receive/send timeout to the connection.
void SetTimeout(const Socket& socket, int seconds);

Status SendMessage(const Socket& socket, const Message& message);
Result<Message> ReceiveMessage(const Socket& socket);

}  // namespace cred::tools
