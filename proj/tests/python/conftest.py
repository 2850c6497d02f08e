import json
import os
import pathlib
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

FIXTURES = pathlib.Path(os.environ.get("MINICONF_FIXTURES", pathlib.Path(__file__).parent.parent / "fixtures"))


@pytest.fixture
def fixtures():
    return FIXTURES


class _ChatHandler(BaseHTTPRequestHandler):
    def do_POST(self):
        state = self.server.state
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        name = body.get("name", "")
        with state["lock"]:
            state["requests"].append(name)
            if self.headers.get("Authorization") != "Bearer " + state["token"]:
                return self._reply(401, {"ok": False, "error": "unauthorized"})
            if name in state["channels"]:
                return self._reply(400, {"ok": False, "error": "channel_exists"})
            state["channels"].add(name)
        self._reply(200, {"ok": True, "channel": {"name": name}})

    def _reply(self, status, payload):
        data = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture
def chat_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _ChatHandler)
    server.state = {"lock": threading.Lock(), "requests": [], "channels": set(), "token": "tok"}
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()
    server.server_close()
