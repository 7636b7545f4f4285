//! Wire helpers: vertex and element labels are 1-based in JSON.

pub mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        v.into_iter().map(|x| x.checked_sub(1).ok_or_else(|| serde::de::Error::custom("labels are 1-based"))).collect()
    }
}

pub mod one_based_sets {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| p.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<usize>>, D::Error> {
        let v = Vec::<Vec<usize>>::deserialize(d)?;
        v.into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|x| x.checked_sub(1).ok_or_else(|| serde::de::Error::custom("labels are 1-based")))
                    .collect()
            })
            .collect()
    }
}
