//! CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF), the transport block
//! integrity check of the toy codec's wire contract.

pub const POLY: u16 = 0x1021;
pub const INIT: u16 = 0xFFFF;

pub fn crc16(data: &[u8]) -> u16 {
    let mut crc = INIT;
    for &byte in data {
        crc ^= (byte as u16) << 8;
        for _ in 0..8 {
            if crc & 0x8000 != 0 {
                crc = (crc << 1) ^ POLY;
            } else {
                crc <<= 1;
            }
        }
    }
    crc
}
