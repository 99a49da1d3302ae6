//! Datagram transports carrying encoded fronthaul frames.
//!
//! Two interchangeable backends: an in-process channel (lossless, ordered,
//! used for bit-exact accounting) and a pair of connected UDP sockets on the
//! loopback interface. Both move whole datagrams; framing is layered on top.

use crate::error::{Error, Result};
use std::net::UdpSocket;
use std::sync::mpsc;
use std::time::Duration;

/// Which transport backend a session should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TransportKind {
    InProcess,
    Udp,
}

pub trait FrameTx: Send {
    fn send(&mut self, datagram: &[u8]) -> Result<()>;
}

/// Receiving side; `Ok(None)` signals end of stream (peer gone or timeout).
pub trait FrameRx: Send {
    fn recv(&mut self) -> Result<Option<Vec<u8>>>;
}

pub struct ChannelTx(mpsc::Sender<Vec<u8>>);
pub struct ChannelRx(mpsc::Receiver<Vec<u8>>);

/// Lossless ordered in-process pair.
pub fn channel_pair() -> (ChannelTx, ChannelRx) {
    let (tx, rx) = mpsc::channel();
    (ChannelTx(tx), ChannelRx(rx))
}

impl FrameTx for ChannelTx {
    fn send(&mut self, datagram: &[u8]) -> Result<()> {
        self.0
            .send(datagram.to_vec())
            .map_err(|_| Error::Transport("receiver hung up".into()))
    }
}

impl FrameRx for ChannelRx {
    fn recv(&mut self) -> Result<Option<Vec<u8>>> {
        match self.0.recv() {
            Ok(d) => Ok(Some(d)),
            Err(mpsc::RecvError) => Ok(None),
        }
    }
}

pub struct UdpTx(UdpSocket);
pub struct UdpRx(UdpSocket);

const UDP_RECV_TIMEOUT: Duration = Duration::from_millis(500);

/// Connected UDP socket pair on the loopback interface.
pub fn udp_pair() -> Result<(UdpTx, UdpRx)> {
    let err = |e: std::io::Error| Error::Transport(format!("udp setup: {e}"));
    let rx = UdpSocket::bind("127.0.0.1:0").map_err(err)?;
    rx.set_read_timeout(Some(UDP_RECV_TIMEOUT)).map_err(err)?;
    let tx = UdpSocket::bind("127.0.0.1:0").map_err(err)?;
    tx.connect(rx.local_addr().map_err(err)?).map_err(err)?;
    rx.connect(tx.local_addr().map_err(err)?).map_err(err)?;
    Ok((UdpTx(tx), UdpRx(rx)))
}

impl FrameTx for UdpTx {
    fn send(&mut self, datagram: &[u8]) -> Result<()> {
        let n = self
            .0
            .send(datagram)
            .map_err(|e| Error::Transport(format!("udp send: {e}")))?;
        if n != datagram.len() {
            return Err(Error::Transport(format!(
                "udp send truncated: {n} of {} bytes",
                datagram.len()
            )));
        }
        Ok(())
    }
}

impl FrameRx for UdpRx {
    fn recv(&mut self) -> Result<Option<Vec<u8>>> {
        let mut buf = vec![0u8; 65_536];
        match self.0.recv(&mut buf) {
            Ok(n) => {
                buf.truncate(n);
                Ok(Some(buf))
            }
            Err(e)
                if e.kind() == std::io::ErrorKind::WouldBlock
                    || e.kind() == std::io::ErrorKind::TimedOut =>
            {
                Ok(None)
            }
            Err(e) => Err(Error::Transport(format!("udp recv: {e}"))),
        }
    }
}

/// Open a matched transmitter/receiver pair of the requested kind.
pub fn open_pair(kind: TransportKind) -> Result<(Box<dyn FrameTx>, Box<dyn FrameRx>)> {
    match kind {
        TransportKind::InProcess => {
            let (tx, rx) = channel_pair();
            Ok((Box::new(tx), Box::new(rx)))
        }
        TransportKind::Udp => {
            let (tx, rx) = udp_pair()?;
            Ok((Box::new(tx), Box::new(rx)))
        }
    }
}
