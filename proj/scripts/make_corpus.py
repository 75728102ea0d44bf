#!/usr/bin/env python3
#
# Project ocsrbench
# SPDX-License-Identifier: Apache-2.0
#
"""Regenerate data/corpus/*.mol from the structure list below.

Needs RDKit. Only used to (re)build the bundled sample corpus; the
C++ build never calls it. Stereochemistry is stripped and structures
are kekulized so the molfiles look like typical drawing-program exports.
"""
import pathlib
import sys

from rdkit import Chem
from rdkit.Chem import AllChem, rdDepictor

# (category, name, smiles)
STRUCTURES = [
    # linear
    ("linear", "ethane", "CC"),
    ("linear", "propane", "CCC"),
    ("linear", "hexane", "CCCCCC"),
    ("linear", "octane", "CCCCCCCC"),
    ("linear", "decane", "CCCCCCCCCC"),
    ("linear", "ethanol", "CCO"),
    ("linear", "1-butanol", "CCCCO"),
    ("linear", "1-hexanol", "CCCCCCO"),
    ("linear", "acetic_acid", "CC(=O)O"),
    ("linear", "butanoic_acid", "CCCC(=O)O"),
    ("linear", "1-hexene", "C=CCCCC"),
    ("linear", "1-pentyne", "C#CCCC"),
    ("linear", "1,3-butadiene", "C=CC=C"),
    ("linear", "diethyl_ether", "CCOCC"),
    ("linear", "propanal", "CCC=O"),
    ("linear", "2-butanone", "CCC(C)=O"),
    ("linear", "1-aminopropane", "CCCN"),
    ("linear", "acetonitrile", "CC#N"),
    ("linear", "1-chlorobutane", "CCCCCl"),
    ("linear", "ethylene_glycol", "OCCO"),
    # branched
    ("branched", "isobutane", "CC(C)C"),
    ("branched", "neopentane", "CC(C)(C)C"),
    ("branched", "isopentane", "CCC(C)C"),
    ("branched", "2,3-dimethylbutane", "CC(C)C(C)C"),
    ("branched", "2,2,4-trimethylpentane", "CC(C)CC(C)(C)C"),
    ("branched", "isopropanol", "CC(C)O"),
    ("branched", "tert-butanol", "CC(C)(C)O"),
    ("branched", "isobutyric_acid", "CC(C)C(=O)O"),
    ("branched", "2-methyl-1-butanol", "CCC(C)CO"),
    ("branched", "3-methyl-2-butanone", "CC(C)C(C)=O"),
    ("branched", "isoprene", "C=CC(C)=C"),
    ("branched", "2-ethylhexanol", "CCCCC(CC)CO"),
    ("branched", "pivalic_acid", "CC(C)(C)C(=O)O"),
    ("branched", "isobutylamine", "CC(C)CN"),
    ("branched", "triethylamine", "CCN(CC)CC"),
    ("branched", "tert-butyl_methyl_ether", "COC(C)(C)C"),
    ("branched", "2-chloro-2-methylpropane", "CC(C)(C)Cl"),
    ("branched", "glycerol", "OCC(O)CO"),
    ("branched", "trifluoroethanol", "OCC(F)(F)F"),
    ("branched", "isovaleraldehyde", "CC(C)CC=O"),
    # cyclic: benzene core
    ("cyclic", "benzene", "c1ccccc1"),
    ("cyclic", "toluene", "Cc1ccccc1"),
    ("cyclic", "phenol", "Oc1ccccc1"),
    ("cyclic", "aniline", "Nc1ccccc1"),
    ("cyclic", "benzoic_acid", "OC(=O)c1ccccc1"),
    ("cyclic", "nitrobenzene", "[O-][N+](=O)c1ccccc1"),
    ("cyclic", "p-xylene", "Cc1ccc(C)cc1"),
    # cyclic: heterocyclic
    ("cyclic", "pyridine", "c1ccncc1"),
    ("cyclic", "pyrimidine", "c1cncnc1"),
    ("cyclic", "furan", "c1ccoc1"),
    ("cyclic", "thiophene", "c1ccsc1"),
    ("cyclic", "pyrrole", "c1cc[nH]c1"),
    ("cyclic", "imidazole", "c1c[nH]cn1"),
    ("cyclic", "piperidine", "C1CCNCC1"),
    ("cyclic", "morpholine", "C1COCCN1"),
    # cyclic: fused
    ("cyclic", "naphthalene", "c1ccc2ccccc2c1"),
    ("cyclic", "quinoline", "c1ccc2ncccc2c1"),
    ("cyclic", "indole", "c1ccc2[nH]ccc2c1"),
    ("cyclic", "anthracene", "c1ccc2cc3ccccc3cc2c1"),
    ("cyclic", "benzofuran", "c1ccc2occc2c1"),
    # cyclic: bridged
    ("cyclic", "norbornane", "C1CC2CCC1C2"),
    ("cyclic", "adamantane", "C1C2CC3CC1CC(C2)C3"),
    ("cyclic", "camphor", "CC1(C)C2CCC1(C)C(=O)C2"),
    # cyclic: polycyclic
    ("cyclic", "phenanthrene", "c1ccc2c(c1)ccc1ccccc12"),
    ("cyclic", "pyrene", "c1cc2ccc3cccc4ccc(c1)c2c34"),
    ("cyclic", "fluorene", "c1ccc2c(c1)Cc1ccccc12"),
    ("cyclic", "carbazole", "c1ccc2c(c1)[nH]c1ccccc12"),
    # cyclic: macrocyclic
    ("cyclic", "cyclododecane", "C1CCCCCCCCCCC1"),
    ("cyclic", "18-crown-6", "C1COCCOCCOCCOCCOCCO1"),
    ("cyclic", "cyclohexadecanone", "O=C1CCCCCCCCCCCCCCC1"),
    # biochemical: amino acids
    ("biochemical", "glycine", "NCC(=O)O"),
    ("biochemical", "alanine", "CC(N)C(=O)O"),
    ("biochemical", "valine", "CC(C)C(N)C(=O)O"),
    ("biochemical", "leucine", "CC(C)CC(N)C(=O)O"),
    ("biochemical", "serine", "NC(CO)C(=O)O"),
    ("biochemical", "cysteine", "NC(CS)C(=O)O"),
    ("biochemical", "phenylalanine", "NC(Cc1ccccc1)C(=O)O"),
    ("biochemical", "tyrosine", "NC(Cc1ccc(O)cc1)C(=O)O"),
    ("biochemical", "tryptophan", "NC(Cc1c[nH]c2ccccc12)C(=O)O"),
    ("biochemical", "histidine", "NC(Cc1c[nH]cn1)C(=O)O"),
    ("biochemical", "lysine", "NCCCCC(N)C(=O)O"),
    ("biochemical", "glutamic_acid", "NC(CCC(=O)O)C(=O)O"),
    ("biochemical", "proline", "OC(=O)C1CCCN1"),
    # biochemical: saccharides
    ("biochemical", "glucose", "OCC1OC(O)C(O)C(O)C1O"),
    ("biochemical", "fructose", "OCC1(O)OCC(O)C(O)C1O"),
    ("biochemical", "ribose", "OCC1OC(O)C(O)C1O"),
    ("biochemical", "deoxyribose", "OCC1OC(O)CC1O"),
    ("biochemical", "sucrose", "OCC1OC(OC2(CO)OC(CO)C(O)C2O)C(O)C(O)C1O"),
    # biochemical: lipids
    ("biochemical", "palmitic_acid", "CCCCCCCCCCCCCCCC(=O)O"),
    ("biochemical", "oleic_acid", "CCCCCCCCC=CCCCCCCCC(=O)O"),
    ("biochemical", "linoleic_acid", "CCCCCC=CCC=CCCCCCCCC(=O)O"),
    ("biochemical", "choline", "C[N+](C)(C)CCO"),
    ("biochemical", "glycerol_monostearate", "CCCCCCCCCCCCCCCCCC(=O)OCC(O)CO"),
    # biochemical: hormones
    ("biochemical", "testosterone", "CC12CCC3C(CCC4=CC(=O)CCC34C)C1CCC2O"),
    ("biochemical", "estradiol", "CC12CCC3c4ccc(O)cc4CCC3C1CCC2O"),
    ("biochemical", "progesterone", "CC(=O)C1CCC2C3CCC4=CC(=O)CCC4(C)C3CCC12C"),
    ("biochemical", "adrenaline", "CNCC(O)c1ccc(O)c(O)c1"),
    ("biochemical", "melatonin", "COc1ccc2[nH]cc(CCNC(C)=O)c2c1"),
    ("biochemical", "serotonin", "NCCc1c[nH]c2ccc(O)cc12"),
    ("biochemical", "dopamine", "NCCc1ccc(O)c(O)c1"),
    # biochemical: vitamins
    ("biochemical", "ascorbic_acid", "OCC(O)C1OC(=O)C(O)=C1O"),
    ("biochemical", "nicotinamide", "NC(=O)c1cccnc1"),
    ("biochemical", "pyridoxine", "Cc1ncc(CO)c(CO)c1O"),
    ("biochemical", "retinol", "CC(C=CC1=C(C)CCCC1(C)C)=CC=CC(C)=CCO"),
    ("biochemical", "riboflavin", "Cc1cc2nc3c(=O)[nH]c(=O)nc-3n(CC(O)C(O)C(O)CO)c2cc1C"),
    ("biochemical", "thiamine", "Cc1ncc(C[n+]2csc(CCO)c2C)c(N)n1"),
    # biochemical: nucleobases and unusual
    ("biochemical", "adenine", "Nc1ncnc2[nH]cnc12"),
    ("biochemical", "caffeine", "Cn1cnc2c1c(=O)n(C)c(=O)n2C"),
    ("biochemical", "uracil", "O=c1cc[nH]c(=O)[nH]1"),
    ("biochemical", "cubane", "C12C3C4C1C5C2C3C45"),
    # mixed linear/branched/cyclic
    ("mixed", "cyclohexylmethanol", "OCC1CCCCC1"),
    ("mixed", "4-tert-butylphenol", "CC(C)(C)c1ccc(O)cc1"),
    ("mixed", "ibuprofen_acid_chain", "CC(C)Cc1ccc(CCC(=O)O)cc1"),
    ("mixed", "2-phenylethanol", "OCCc1ccccc1"),
    ("mixed", "cyclopentyl_acetate", "CC(=O)OC1CCCC1"),
    ("mixed", "benzyl_isobutyl_ether", "CC(C)COCc1ccccc1"),
    ("mixed", "4-hexylpyridine", "CCCCCCc1ccncc1"),
    ("mixed", "menthol", "CC(C)C1CCC(C)CC1O"),
    ("mixed", "limonene", "CC(=C)C1CCC(C)=CC1"),
    ("mixed", "sodium_benzoate", "[Na+].[O-]C(=O)c1ccccc1"),
    # pharmaceutical
    ("pharmaceutical", "aspirin", "CC(=O)Oc1ccccc1C(=O)O"),
    ("pharmaceutical", "paracetamol", "CC(=O)Nc1ccc(O)cc1"),
    ("pharmaceutical", "ibuprofen", "CC(C)Cc1ccc(C(C)C(=O)O)cc1"),
    ("pharmaceutical", "caffeine_citrate_base", "Cn1c(=O)c2c(ncn2C)n(C)c1=O"),
    ("pharmaceutical", "diazepam", "CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21"),
    ("pharmaceutical", "metformin", "CN(C)C(=N)N=C(N)N"),
    ("pharmaceutical", "lidocaine", "CCN(CC)CC(=O)Nc1c(C)cccc1C"),
    ("pharmaceutical", "nicotine", "CN1CCCC1c1cccnc1"),
    ("pharmaceutical", "naproxen", "COc1ccc2cc(C(C)C(=O)O)ccc2c1"),
]


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.mol"):
        old.unlink()
    assert len(STRUCTURES) == 129, len(STRUCTURES)
    rdDepictor.SetPreferCoordGen(True)
    for i, (category, name, smiles) in enumerate(STRUCTURES, start=1):
        mol = Chem.MolFromSmiles(smiles)
        if mol is None:
            raise SystemExit(f"bad smiles for {name}: {smiles}")
        Chem.RemoveStereochemistry(mol)
        AllChem.Compute2DCoords(mol)
        Chem.Kekulize(mol, clearAromaticFlags=True)
        mol.SetProp("_Name", name)
        block = Chem.MolToMolBlock(mol, includeStereo=False, kekulize=True,
                                   forceV3000=False)
        lines = block.splitlines()
        lines[1] = f"  {category}"
        (out / f"{i:03d}_{name}.mol").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpus")
