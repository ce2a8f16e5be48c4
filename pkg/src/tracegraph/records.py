"""Runtime trace records: parsing, validation, normalization, global stats.

One record describes one sandboxed package execution: identity, a binary
label, and four event lists (file accesses, DNS queries, socket endpoints,
executed commands). Records travel as line-delimited JSON, one record per
line, so corpora can be streamed.
"""

from __future__ import annotations

import ipaddress
import json
import re
from dataclasses import dataclass, field

ECOSYSTEMS = ("crates.io", "npm", "packagist", "pypi", "rubygems")
ACTIONS = ("read", "write", "delete")
QTYPES = ("A", "AAAA", "CNAME")

NODE_TYPES = ("Package", "Path", "DNSHost", "Command", "Socket")
LEAF_TYPES = ("Path", "DNSHost", "Command", "Socket")

_WS_RUN = re.compile(r"\s+")
_SLASH_RUN = re.compile(r"/{2,}")


class TraceError(ValueError):
    """Malformed or invalid trace data."""


@dataclass
class FileEvent:
    path: str
    action: str


@dataclass
class DnsEvent:
    host: str
    qtype: str


@dataclass
class SocketEvent:
    host: str
    port: int


@dataclass
class CommandEvent:
    command: str
    args: list[str] = field(default_factory=list)
    env_names: list[str] = field(default_factory=list)


@dataclass
class InstanceRecord:
    """One package execution trace. Event lists may all be empty."""

    package_id: str
    ecosystem: str
    label: int
    file_events: list[FileEvent] = field(default_factory=list)
    dns_events: list[DnsEvent] = field(default_factory=list)
    socket_events: list[SocketEvent] = field(default_factory=list)
    command_events: list[CommandEvent] = field(default_factory=list)


def normalize_token(node_type: str, raw: str) -> str:
    """Canonicalize a raw token for the given node type.

    Deterministic and idempotent. All types trim surrounding whitespace.
    DNS hosts are lowercased with trailing dots removed; paths collapse
    slash runs and drop a trailing slash (except the root); commands
    collapse internal whitespace runs; socket tokens ("host:port") are
    lowercased. Paths stay case-sensitive on purpose.
    """
    if node_type not in NODE_TYPES:
        raise TraceError(f"unknown node type {node_type!r}")
    token = raw.strip()
    if node_type == "DNSHost":
        return token.lower().rstrip(".")
    if node_type == "Path":
        token = _SLASH_RUN.sub("/", token)
        if token.endswith("/") and token != "/":
            token = token[:-1]
        return token
    if node_type == "Command":
        return _WS_RUN.sub(" ", token)
    if node_type == "Socket":
        return token.lower()
    return token  # Package


def _expect(cond: bool, msg: str, lineno: int) -> None:
    if not cond:
        raise TraceError(f"{msg}, line {lineno}")


def _as_str(value, what: str, lineno: int) -> str:
    _expect(isinstance(value, str), f"{what} must be a string", lineno)
    return value


def parse_instance_line(line: str, lineno: int = 1) -> InstanceRecord:
    """Parse one serialized record. Unknown keys are ignored."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceError(f"malformed record ({exc.msg}), line {lineno}") from exc
    _expect(isinstance(obj, dict), "record must be an object", lineno)

    package = _as_str(obj.get("package", ""), "package", lineno).strip()
    _expect(bool(package), "package must be non-empty", lineno)
    ecosystem = _as_str(obj.get("ecosystem", ""), "ecosystem", lineno)
    _expect(ecosystem in ECOSYSTEMS, f"unknown ecosystem {ecosystem!r}", lineno)
    label = obj.get("label")
    _expect(label in (0, 1), "label out of range", lineno)

    files = []
    for ev in _event_array(obj, "files", lineno):
        path = _as_str(ev.get("path", ""), "files.path", lineno)
        action = ev.get("action")
        _expect(action in ACTIONS, f"invalid action {action!r}", lineno)
        files.append(FileEvent(path, action))

    dns = []
    for ev in _event_array(obj, "dns", lineno):
        host = _as_str(ev.get("host", ""), "dns.host", lineno)
        qtype = ev.get("type")
        _expect(qtype in QTYPES, f"invalid dns type {qtype!r}", lineno)
        dns.append(DnsEvent(host, qtype))

    sockets = []
    for ev in _event_array(obj, "sockets", lineno):
        host = _as_str(ev.get("host", ""), "sockets.host", lineno)
        port = ev.get("port")
        _expect(
            isinstance(port, int) and not isinstance(port, bool) and 0 <= port <= 65535,
            f"invalid port {port!r}",
            lineno,
        )
        sockets.append(SocketEvent(host, port))

    commands = []
    for ev in _event_array(obj, "commands", lineno):
        cmd = _as_str(ev.get("cmd", ""), "commands.cmd", lineno)
        args = ev.get("args", [])
        env = ev.get("env", [])
        _expect(
            isinstance(args, list) and all(isinstance(a, str) for a in args),
            "commands.args must be a list of strings",
            lineno,
        )
        _expect(
            isinstance(env, list) and all(isinstance(e, str) for e in env),
            "commands.env must be a list of strings",
            lineno,
        )
        commands.append(CommandEvent(cmd, list(args), list(env)))

    return InstanceRecord(package, ecosystem, label, files, dns, sockets, commands)


def _event_array(obj: dict, key: str, lineno: int) -> list[dict]:
    value = obj.get(key, [])
    _expect(isinstance(value, list), f"{key} must be an array", lineno)
    for ev in value:
        _expect(isinstance(ev, dict), f"{key} entries must be objects", lineno)
    return value


def parse_instances(stream) -> list[InstanceRecord]:
    """Parse a line-delimited record stream in input order.

    Blank lines are skipped. Raises TraceError naming the offending line
    on the first invalid record.
    """
    out = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        out.append(parse_instance_line(line, lineno))
    return out


def serialize_instance(record: InstanceRecord) -> str:
    """Serialize a record to one line; inverse of parse_instance_line."""
    obj = {
        "package": record.package_id,
        "ecosystem": record.ecosystem,
        "label": record.label,
        "files": [{"path": e.path, "action": e.action} for e in record.file_events],
        "dns": [{"host": e.host, "type": e.qtype} for e in record.dns_events],
        "sockets": [{"host": e.host, "port": e.port} for e in record.socket_events],
        "commands": [
            {"cmd": e.command, "args": list(e.args), "env": list(e.env_names)}
            for e in record.command_events
        ],
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


# The thirteen handcrafted global statistics, in their canonical order.
STAT_FIELDS = (
    "file_write_count",
    "file_read_count",
    "file_delete_count",
    "file_unique_paths",
    "dns_unique_types",
    "dns_total_queries",
    "dns_unique_hosts",
    "socket_unique_ips",
    "socket_unique_hostnames",
    "cmd_total_count",
    "cmd_unique_commands",
    "cmd_total_args",
    "cmd_total_envs",
)


@dataclass
class GlobalStats:
    file_write_count: int = 0
    file_read_count: int = 0
    file_delete_count: int = 0
    file_unique_paths: int = 0
    dns_unique_types: int = 0
    dns_total_queries: int = 0
    dns_unique_hosts: int = 0
    socket_unique_ips: int = 0
    socket_unique_hostnames: int = 0
    cmd_total_count: int = 0
    cmd_unique_commands: int = 0
    cmd_total_args: int = 0
    cmd_total_envs: int = 0

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in STAT_FIELDS}


def is_ip_literal(host: str) -> bool:
    try:
        ipaddress.ip_address(host)
    except ValueError:
        return False
    return True


def compute_global_stats(record: InstanceRecord) -> GlobalStats:
    """Count events and distinct normalized tokens for one record."""
    stats = GlobalStats()
    paths = set()
    for ev in record.file_events:
        paths.add(normalize_token("Path", ev.path))
        if ev.action == "write":
            stats.file_write_count += 1
        elif ev.action == "read":
            stats.file_read_count += 1
        else:
            stats.file_delete_count += 1
    stats.file_unique_paths = len(paths)

    stats.dns_total_queries = len(record.dns_events)
    stats.dns_unique_types = len({ev.qtype for ev in record.dns_events})
    stats.dns_unique_hosts = len(
        {normalize_token("DNSHost", ev.host) for ev in record.dns_events}
    )

    ips = set()
    names = set()
    for ev in record.socket_events:
        host = ev.host.strip().lower()
        (ips if is_ip_literal(host) else names).add(host)
    stats.socket_unique_ips = len(ips)
    stats.socket_unique_hostnames = len(names)

    stats.cmd_total_count = len(record.command_events)
    stats.cmd_unique_commands = len(
        {normalize_token("Command", ev.command) for ev in record.command_events}
    )
    stats.cmd_total_args = sum(len(ev.args) for ev in record.command_events)
    stats.cmd_total_envs = sum(len(ev.env_names) for ev in record.command_events)
    return stats
