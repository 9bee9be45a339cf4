//! Rotation-system view of a 4-valent diagram: crossings with four slots in
//! counterclockwise order, arcs joining two slots.
//!
//! Faces are the orbits of `σ ∘ α` on half-edges, where `α` jumps to the
//! other end of an arc and `σ` turns one slot counterclockwise. The corner
//! between slots `j` and `j+1` of a crossing lies in the face containing
//! half-edge `(c, j+1)`.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) type HalfEdge = (usize, u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Wiring {
    /// Dense arc index at each slot of each crossing.
    pub slots: Vec<[usize; 4]>,
    /// The two slots each arc is attached to.
    pub ends: Vec<[HalfEdge; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WiringError {
    /// Arc index appears with this many slot attachments (≠ 2).
    Arity(usize, usize),
}

impl Wiring {
    pub fn new(slots: Vec<[usize; 4]>, n_arcs: usize) -> Result<Self, WiringError> {
        let mut found: Vec<Vec<HalfEdge>> = vec![Vec::new(); n_arcs];
        for (c, quad) in slots.iter().enumerate() {
            for (k, &a) in quad.iter().enumerate() {
                if a >= n_arcs {
                    return Err(WiringError::Arity(a, 0));
                }
                found[a].push((c, k as u8));
            }
        }
        let mut ends = Vec::with_capacity(n_arcs);
        for (a, f) in found.into_iter().enumerate() {
            if f.len() != 2 {
                return Err(WiringError::Arity(a, f.len()));
            }
            ends.push([f[0], f[1]]);
        }
        Ok(Wiring { slots, ends })
    }

    pub fn n_crossings(&self) -> usize {
        self.slots.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.ends.len()
    }

    pub fn arc_at(&self, h: HalfEdge) -> usize {
        self.slots[h.0][h.1 as usize]
    }

    pub fn other_end(&self, h: HalfEdge) -> HalfEdge {
        let e = &self.ends[self.arc_at(h)];
        if e[0] == h {
            e[1]
        } else {
            e[0]
        }
    }

    fn he_index(h: HalfEdge) -> usize {
        h.0 * 4 + h.1 as usize
    }

    /// Face id of every half-edge, plus the face count.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        let total = self.n_crossings() * 4;
        let mut face = vec![usize::MAX; total];
        let mut count = 0;
        for start in 0..total {
            if face[start] != usize::MAX {
                continue;
            }
            let mut h: HalfEdge = (start / 4, (start % 4) as u8);
            loop {
                let idx = Self::he_index(h);
                if face[idx] != usize::MAX {
                    break;
                }
                face[idx] = count;
                let (c, k) = self.other_end(h);
                h = (c, (k + 1) % 4);
            }
            count += 1;
        }
        (face, count)
    }

    /// Face containing the corner between slots `j` and `j+1` of crossing `c`.
    pub fn corner_face(faces: &[usize], c: usize, j: u8) -> usize {
        faces[c * 4 + ((j + 1) % 4) as usize]
    }

    /// Connected pieces of the crossing graph, as a piece id per crossing.
    pub fn pieces(&self) -> (Vec<usize>, usize) {
        let n = self.n_crossings();
        let mut piece = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if piece[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            piece[s] = count;
            while let Some(c) = stack.pop() {
                for k in 0..4u8 {
                    let (d, _) = self.other_end((c, k));
                    if piece[d] == usize::MAX {
                        piece[d] = count;
                        stack.push(d);
                    }
                }
            }
            count += 1;
        }
        (piece, count)
    }

    /// Every connected piece is a sphere: `faces = crossings + 2` per piece.
    pub fn is_planar(&self) -> bool {
        let (piece, n_pieces) = self.pieces();
        let (faces, n_faces) = self.faces();
        let mut crossings_per = vec![0usize; n_pieces];
        for &p in &piece {
            crossings_per[p] += 1;
        }
        let mut face_piece = vec![usize::MAX; n_faces];
        for (idx, &f) in faces.iter().enumerate() {
            face_piece[f] = piece[idx / 4];
        }
        let mut faces_per = vec![0usize; n_pieces];
        for &p in &face_piece {
            faces_per[p] += 1;
        }
        crossings_per.iter().zip(&faces_per).all(|(c, f)| *f == c + 2)
    }

    /// Two-colouring of faces so that the two corners of a crossing that are
    /// opposite each other share a colour and neighbouring corners differ.
    /// `None` if the faces admit no such colouring.
    pub fn checkerboard(&self, faces: &[usize], n_faces: usize) -> Option<Vec<u8>> {
        // Corners (c,0..1) and (c,2..3) share a colour, (c,1..2) and (c,3..0) the other.
        let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n_faces];
        for c in 0..self.n_crossings() {
            let f: [usize; 4] = core::array::from_fn(|j| Self::corner_face(faces, c, j as u8));
            for (x, y, parity) in [(f[0], f[2], 0u8), (f[1], f[3], 0), (f[0], f[1], 1), (f[1], f[2], 1)] {
                adj[x].push((y, parity));
                adj[y].push((x, parity));
            }
        }
        let mut colour = vec![u8::MAX; n_faces];
        for s in 0..n_faces {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(f) = stack.pop() {
                for &(g, parity) in &adj[f] {
                    let want = colour[f] ^ parity;
                    if colour[g] == u8::MAX {
                        colour[g] = want;
                        stack.push(g);
                    } else if colour[g] != want {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kink_is_planar() {
        // one crossing, arcs 0 (slots 0,1) and 1 (slots 2,3)
        let w = Wiring::new(vec![[0, 0, 1, 1]], 2).unwrap();
        assert_eq!(w.faces().1, 3);
        assert!(w.is_planar());
    }

    #[test]
    fn arity_violation() {
        assert!(Wiring::new(vec![[0, 1, 2, 1]], 3).is_err());
    }

    #[test]
    fn nonplanar_virtual_trefoil_like_wiring() {
        // two crossings joined so that the rotation system has genus one
        let w = Wiring::new(vec![[0, 1, 2, 3], [0, 2, 1, 3]], 4).unwrap();
        assert!(!w.is_planar());
    }
}
